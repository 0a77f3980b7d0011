#pragma once

#include <gtest/gtest.h>

#include "hardy/error.hpp"

// Expects `stmt` to throw hardy::Error of the given kind.
#define EXPECT_HARDY_ERROR(stmt, expected_kind)                                       \
  do {                                                                                \
    try {                                                                             \
      stmt;                                                                           \
      ADD_FAILURE() << #stmt " did not throw";                                        \
    } catch (const hardy::Error& e) {                                                 \
      EXPECT_EQ(e.kind(), expected_kind) << e.what();                                 \
    }                                                                                 \
  } while (0)

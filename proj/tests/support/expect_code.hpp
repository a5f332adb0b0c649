#pragma once

#include <gtest/gtest.h>

#include "usn/core/error.hpp"

// EXPECT_CODE(Code, statement...) passes when the statement throws a
// usn::Error carrying ErrorCode::Code.
#define EXPECT_CODE(expected, ...)                                   \
  do {                                                               \
    try {                                                            \
      __VA_ARGS__;                                                   \
      ADD_FAILURE() << #__VA_ARGS__ " did not throw";                \
    } catch (const ::usn::Error& usn_error_) {                       \
      EXPECT_EQ(usn_error_.code(), ::usn::ErrorCode::expected)       \
          << #__VA_ARGS__ << ": " << usn_error_.what();              \
    }                                                                \
  } while (0)

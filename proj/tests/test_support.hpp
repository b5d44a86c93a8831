#pragma once

#include <string>

#include <gtest/gtest.h>

#include <gaitadapt/errors.hpp>

// Asserts that stmt throws gaitadapt::Error with the given code.
#define EXPECT_ERROR_CODE(stmt, expected)                                                   \
  do                                                                                        \
  {                                                                                         \
    try                                                                                     \
    {                                                                                       \
      stmt;                                                                                 \
      ADD_FAILURE() << "expected " << gaitadapt::toString(expected) << ", nothing thrown"; \
    }                                                                                       \
    catch(const gaitadapt::Error & e__)                                                     \
    {                                                                                       \
      EXPECT_EQ(e__.code(), expected) << e__.what();                                        \
    }                                                                                       \
  } while(false)

inline std::string scenarioPath(const std::string & name)
{
  return std::string(GAITADAPT_SCENARIO_DIR) + "/" + name;
}

#pragma once

#include <functional>
#include <string>

#include "doctest.h"
#include "nahmforge/errors.hpp"

namespace nahmforge::testutil {

// Runs fn and checks that it throws an Error whose kind() matches `kind`.
inline void expect_kind(const std::string& kind,
                        const std::function<void()>& fn) {
  try {
    fn();
    FAIL_CHECK("expected an Error of kind " << kind << ", nothing thrown");
  } catch (const Error& e) {
    CHECK(e.kind() == kind);
  } catch (const std::exception& e) {
    FAIL_CHECK("expected an Error of kind " << kind << ", got "
                                            << e.what());
  }
}

}  // namespace nahmforge::testutil

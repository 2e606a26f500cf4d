#pragma once

#include <gtest/gtest.h>

#include <Eigen/Core>

#include "zfskit/error.hpp"

template <class F>
void expect_error_kind(F&& f, zfs::ErrorKind kind) {
  try {
    f();
    ADD_FAILURE() << "expected an error of kind " << zfs::to_string(kind);
  } catch (const zfs::Error& e) {
    EXPECT_EQ(e.kind(), kind) << e.what();
  }
}

inline double max_abs_diff(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

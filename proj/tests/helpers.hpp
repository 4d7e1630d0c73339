#pragma once

#include "dcube/errors.hpp"
#include "dcube/tabular.hpp"

#include <doctest.h>

#include <string>

#define CHECK_ERROR_KIND(expr, expected)                                       \
  do {                                                                         \
    try {                                                                      \
      (void)(expr);                                                            \
      FAIL_CHECK("expected " << dcube::to_string(expected) << ", no error");   \
    } catch (const dcube::Error& e) {                                          \
      CHECK_MESSAGE(e.kind() == (expected), e.what());                         \
    }                                                                          \
  } while (0)

inline dcube::Triplet triplet(const dcube::Matrix& x) {
  return dcube::Triplet::uniform(dcube::DataTable::unlabeled(x));
}

inline dcube::Triplet triplet(const dcube::Matrix& x, const dcube::Vector& d, const dcube::Vector& w) {
  return dcube::Triplet(dcube::DataTable::unlabeled(x), dcube::ColumnMetric(d), dcube::RowWeights::normalized(w));
}

inline dcube::Matrix mat(std::initializer_list<std::initializer_list<double>> rows) {
  dcube::Matrix m(static_cast<dcube::Index>(rows.size()), static_cast<dcube::Index>(rows.begin()->size()));
  dcube::Index i = 0;
  for (const auto& r : rows) {
    dcube::Index j = 0;
    for (double v : r) m(i, j++) = v;
    ++i;
  }
  return m;
}

inline dcube::Vector vec(std::initializer_list<double> v) {
  dcube::Vector out(static_cast<dcube::Index>(v.size()));
  dcube::Index i = 0;
  for (double x : v) out[i++] = x;
  return out;
}

inline dcube::Labels labels(const std::string& prefix, dcube::Index n) {
  dcube::Labels out;
  for (dcube::Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i + 1));
  return out;
}

#pragma once

#include "pml/errors.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace pml {

template <typename T>
class SquareMatrix {
 public:
  SquareMatrix() : n_(0) {}
  explicit SquareMatrix(int n, const T& fill = T()) : n_(n), a_(static_cast<std::size_t>(n) * n, fill) {}

  int size() const { return n_; }
  T& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const T& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * n_ + j]; }

  const std::vector<T>& data() const { return a_; }
  std::vector<T>& data() { return a_; }

  bool operator==(const SquareMatrix& o) const { return n_ == o.n_ && a_ == o.a_; }

  static SquareMatrix identity(int n) {
    SquareMatrix m(n, T(0));
    for (int i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  template <typename U>
  SquareMatrix<U> cast() const {
    SquareMatrix<U> m(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) m(i, j) = static_cast<U>((*this)(i, j));
    return m;
  }

 private:
  int n_;
  std::vector<T> a_;
};

// Plain-text matrix format: one row per line, comma-separated decimal values.
SquareMatrix<double> parse_matrix_text(const std::string& text);
SquareMatrix<double> read_matrix_file(const std::string& path);

// Comma-separated numbers; entries may be decimals or fractions like "3/8".
std::vector<double> parse_csv_numbers(const std::string& text);

}  // namespace pml

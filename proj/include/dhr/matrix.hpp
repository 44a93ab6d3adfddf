#ifndef DHR_MATRIX_HPP
#define DHR_MATRIX_HPP

#include <stdexcept>
#include <vector>

namespace dhr {

// Small dense matrix, 1-based accessors to match the math.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, const T &fill = T()) : r_(rows), c_(cols), d_(rows * cols, fill) {}

  int rows() const { return r_; }
  int cols() const { return c_; }
  T &operator()(int i, int j) { return d_[(i - 1) * c_ + (j - 1)]; }
  const T &operator()(int i, int j) const { return d_[(i - 1) * c_ + (j - 1)]; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 1; i <= r_; ++i)
      for (int j = 1; j <= c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  template <class F>
  auto map(F f) const -> Matrix<decltype(f(std::declval<const T &>()))> {
    Matrix<decltype(f(std::declval<const T &>()))> out(r_, c_);
    for (int i = 1; i <= r_; ++i)
      for (int j = 1; j <= c_; ++j) out(i, j) = f((*this)(i, j));
    return out;
  }

  friend Matrix operator*(const Matrix &a, const Matrix &b) {
    if (a.c_ != b.r_) throw std::invalid_argument("matrix shape mismatch");
    Matrix out(a.r_, b.c_);
    for (int i = 1; i <= a.r_; ++i)
      for (int j = 1; j <= b.c_; ++j) {
        T acc{};
        for (int k = 1; k <= a.c_; ++k) {
          if (is_zero_entry(a(i, k)) || is_zero_entry(b(k, j))) continue;
          acc += a(i, k) * b(k, j);
        }
        out(i, j) = acc;
      }
    return out;
  }

  friend Matrix operator+(const Matrix &a, const Matrix &b) {
    Matrix out = a;
    for (std::size_t k = 0; k < out.d_.size(); ++k) out.d_[k] += b.d_[k];
    return out;
  }

  friend Matrix operator-(const Matrix &a, const Matrix &b) {
    Matrix out = a;
    for (std::size_t k = 0; k < out.d_.size(); ++k) out.d_[k] -= b.d_[k];
    return out;
  }

 private:
  template <class U>
  static bool is_zero_entry(const U &v) {
    if constexpr (requires { v.is_zero(); })
      return v.is_zero();
    else
      return v == U{};
  }

  int r_ = 0, c_ = 0;
  std::vector<T> d_;
};

}  // namespace dhr

#endif

#pragma once

#include <gmpxx.h>

#include <string>
#include <vector>

#include "jetform/errors.hpp"

namespace jetform {

/// Exact rational scalar. All coefficient arithmetic in the library is exact;
/// there is no floating point anywhere.
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
    Rational r(num, den);
    r.canonicalize();
    return r;
}

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }

/// Canonical text form "n" or "n/d" with d > 0 and gcd(n, d) = 1.
std::string to_string(const Rational& r);

/// Parses "n" or "n/d". Throws SyntaxError on malformed input.
Rational rational_from_string(const std::string& text);

/// Dense little matrix of rationals; just enough linear algebra for constant
/// linear parts (inverses, solves, symplectic bases).
class QMatrix {
  public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(size_t(rows) * cols) {}

    static QMatrix identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    Rational& at(int i, int j) { return a_[size_t(i) * cols_ + j]; }
    const Rational& at(int i, int j) const { return a_[size_t(i) * cols_ + j]; }

    QMatrix transposed() const;
    friend QMatrix operator*(const QMatrix& a, const QMatrix& b);
    bool operator==(const QMatrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_; }

  private:
    int rows_, cols_;
    std::vector<Rational> a_;
};

/// Gauss-Jordan inverse. Throws SingularJacobian when not invertible.
QMatrix inverse(const QMatrix& m);
bool is_invertible(const QMatrix& m);
int rank(const QMatrix& m);

}  // namespace jetform

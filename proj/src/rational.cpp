#include "jetform/rational.hpp"

namespace jetform {

std::string to_string(const Rational& r) {
    return r.get_str();
}

Rational rational_from_string(const std::string& text) {
    if (text.empty()) throw SyntaxError("empty rational", 0);
    size_t i = 0;
    auto digits = [&](size_t from) {
        size_t j = from;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        return j;
    };
    size_t p = i;
    if (text[p] == '-') ++p;
    size_t num_end = digits(p);
    if (num_end == p) throw SyntaxError("expected digits", p);
    size_t den_end = num_end;
    if (num_end < text.size() && text[num_end] == '/') {
        den_end = digits(num_end + 1);
        if (den_end == num_end + 1) throw SyntaxError("expected denominator digits", num_end + 1);
    }
    if (den_end != text.size()) throw SyntaxError("trailing characters in rational", den_end);
    Rational r(text);
    r.canonicalize();
    if (r.get_den() == 0) throw SyntaxError("zero denominator", num_end);
    return r;
}

QMatrix QMatrix::identity(int n) {
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::transposed() const {
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

QMatrix operator*(const QMatrix& a, const QMatrix& b) {
    if (a.cols() != b.rows()) throw VariableMismatch("matrix shape mismatch");
    QMatrix c(a.rows(), b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int k = 0; k < a.cols(); ++k) {
            if (is_zero(a.at(i, k))) continue;
            for (int j = 0; j < b.cols(); ++j) c.at(i, j) += a.at(i, k) * b.at(k, j);
        }
    return c;
}

namespace {

// Row-reduces `m` in place; companion receives the same row operations.
// Returns the rank.
int eliminate(QMatrix& m, QMatrix* companion) {
    int r = 0;
    for (int col = 0; col < m.cols() && r < m.rows(); ++col) {
        int pivot = -1;
        for (int i = r; i < m.rows(); ++i)
            if (!is_zero(m.at(i, col))) {
                pivot = i;
                break;
            }
        if (pivot < 0) continue;
        for (int j = 0; j < m.cols(); ++j) std::swap(m.at(pivot, j), m.at(r, j));
        if (companion)
            for (int j = 0; j < companion->cols(); ++j) std::swap(companion->at(pivot, j), companion->at(r, j));
        Rational inv = 1 / m.at(r, col);
        for (int j = 0; j < m.cols(); ++j) m.at(r, j) *= inv;
        if (companion)
            for (int j = 0; j < companion->cols(); ++j) companion->at(r, j) *= inv;
        for (int i = 0; i < m.rows(); ++i) {
            if (i == r || is_zero(m.at(i, col))) continue;
            Rational factor = m.at(i, col);
            for (int j = 0; j < m.cols(); ++j) m.at(i, j) -= factor * m.at(r, j);
            if (companion)
                for (int j = 0; j < companion->cols(); ++j)
                    companion->at(i, j) -= factor * companion->at(r, j);
        }
        ++r;
    }
    return r;
}

}  // namespace

QMatrix inverse(const QMatrix& m) {
    if (m.rows() != m.cols()) throw SingularJacobian("non-square matrix");
    QMatrix work = m;
    QMatrix inv = QMatrix::identity(m.rows());
    if (eliminate(work, &inv) != m.rows()) throw SingularJacobian("singular matrix");
    return inv;
}

bool is_invertible(const QMatrix& m) {
    if (m.rows() != m.cols()) return false;
    QMatrix work = m;
    return eliminate(work, nullptr) == m.rows();
}

int rank(const QMatrix& m) {
    QMatrix work = m;
    return eliminate(work, nullptr);
}

}  // namespace jetform

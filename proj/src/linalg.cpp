#include "qqpovm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>

#include "qqpovm/errors.hpp"

namespace qqpovm {

namespace {

std::string shape(const ComplexMatrix& m) {
    std::ostringstream os;
    os << m.rows() << "x" << m.cols();
    return os.str();
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionError(std::string(what) + ": shape mismatch " + shape(a) + " vs " + shape(b));
    }
}

void require_square(const ComplexMatrix& m, const char* what) {
    if (!m.is_square()) throw DimensionError(std::string(what) + ": matrix is " + shape(m) + ", not square");
}

}  // namespace

Tolerance::Tolerance(double eps) : abs_eps(eps) {
    if (!(eps >= 0.0) || !std::isfinite(eps)) throw std::invalid_argument("tolerance must be finite and >= 0");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        data_.insert(data_.end(), row.begin(), row.end());
    }
    if (!all_finite()) throw std::invalid_argument("matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major)
    : rows_(rows), cols_(cols), data_(std::move(row_major)) {
    if (data_.size() != rows_ * cols_) throw DimensionError("entry count does not match " + shape(*this));
    if (!all_finite()) throw std::invalid_argument("matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> v) {
    ComplexMatrix m(v.size(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i)
        for (std::size_t j = 0; j < v.size(); ++j) m(i, j) = v[i] * std::conj(v[j]);
    return m;
}

std::vector<Complex> ComplexMatrix::column(std::size_t c) const {
    std::vector<Complex> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
}

Complex ComplexMatrix::trace() const {
    require_square(*this, "trace");
    Complex t = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& z : data_) m = std::max(m, std::abs(z));
    return m;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix ComplexMatrix::padded(std::size_t rows, std::size_t cols) const {
    if (rows < rows_ || cols < cols_) throw DimensionError("padded: target smaller than " + shape(*this));
    ComplexMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t c = 0; c < cols_; ++c) out(r, c) = (*this)(r, c);
    return out;
}

ComplexMatrix ComplexMatrix::block(std::size_t rows, std::size_t cols) const {
    if (rows > rows_ || cols > cols_) throw DimensionError("block: larger than " + shape(*this));
    ComplexMatrix out(rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) out(r, c) = (*this)(r, c);
    return out;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
    require_same_shape(*this, rhs, "subtract");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
    for (auto& z : data_) z *= s;
    return *this;
}

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
ComplexMatrix operator*(ComplexMatrix m, Complex s) { return m *= s; }
ComplexMatrix operator*(Complex s, ComplexMatrix m) { return m *= s; }

ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs) {
    if (lhs.cols() != rhs.rows()) {
        throw DimensionError("multiply: " + shape(lhs) + " * " + shape(rhs));
    }
    ComplexMatrix out(lhs.rows(), rhs.cols());
    for (std::size_t i = 0; i < lhs.rows(); ++i)
        for (std::size_t k = 0; k < lhs.cols(); ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) continue;
            for (std::size_t j = 0; j < rhs.cols(); ++j) out(i, j) += a * rhs(k, j);
        }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

double real_trace(const ComplexMatrix& m) {
    const Complex t = m.trace();
    if (std::abs(t.imag()) > kRealTraceEps) {
        std::ostringstream os;
        os << "trace expected real, imaginary part " << t.imag();
        throw std::domain_error(os.str());
    }
    return t.real();
}

double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows() || a.rows() != b.cols()) {
        throw DimensionError("trace product: " + shape(a) + " * " + shape(b));
    }
    // Only the diagonal of the product is needed.
    Complex t = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) t += a(i, k) * b(k, i);
    if (std::abs(t.imag()) > kRealTraceEps) {
        std::ostringstream os;
        os << "trace product expected real, imaginary part " << t.imag();
        throw std::domain_error(os.str());
    }
    return t.real();
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    require_square(m, "hermitian_part");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
    return out;
}

bool is_hermitian(const ComplexMatrix& m, Tolerance tol) {
    require_square(m, "is_hermitian");
    return max_abs_diff(m, m.adjoint()) <= tol.abs_eps;
}

double idempotence_residual(const ComplexMatrix& m) {
    require_square(m, "idempotence_residual");
    return max_abs_diff(m * m, m);
}

EigenDecomposition eig_hermitian(const ComplexMatrix& input) {
    require_square(input, "eig_hermitian");
    const std::size_t n = input.rows();
    ComplexMatrix a = hermitian_part(input);
    ComplexMatrix v = ComplexMatrix::identity(n);

    auto off_norm = [&] {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (i != j) s += std::norm(a(i, j));
        return std::sqrt(s);
    };
    double scale = 0.0;
    for (const auto& z : a.data()) scale += std::norm(z);
    scale = std::sqrt(scale);

    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && n > 1; ++sweep) {
        if (off_norm() <= 1e-300 + 1e-17 * scale) break;
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                // Phase w makes the (p,q) entry real; then a real symmetric rotation
                // annihilates it. U = [[c, s], [-s*conj(w), c*conj(w)]] on (p,q).
                const Complex w = apq / mag;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * mag);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex u00 = c;
                const Complex u01 = s;
                const Complex u10 = -s * std::conj(w);
                const Complex u11 = c * std::conj(w);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * u00 + akq * u10;
                    a(k, q) = akp * u01 + akq * u11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
                    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * u00 + vkq * u10;
                    v(k, q) = vkp * u01 + vkq * u11;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() < a(j, j).real(); });

    EigenDecomposition out;
    out.values.resize(n);
    out.vectors = ComplexMatrix(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
    }
    return out;
}

double min_eigenvalue(const ComplexMatrix& m) {
    const auto eig = eig_hermitian(m);
    return eig.values.empty() ? 0.0 : eig.values.front();
}

ComplexMatrix principal_sqrt(const ComplexMatrix& m, Tolerance tol) {
    require_square(m, "principal_sqrt");
    if (!is_hermitian(m, tol)) throw NotPsdError("principal_sqrt: matrix is not Hermitian");
    const auto eig = eig_hermitian(m);
    if (!eig.values.empty() && eig.values.front() < -tol.abs_eps) {
        std::ostringstream os;
        os << "principal_sqrt: eigenvalue " << eig.values.front() << " below -" << tol.abs_eps;
        throw NotPsdError(os.str());
    }
    // eigenvalues within tol of zero are rounding noise; their root would be ~sqrt(eps)
    const double flush = tol.abs_eps;
    return eig.apply([flush](double lambda) { return lambda <= flush ? 0.0 : std::sqrt(lambda); });
}

}  // namespace qqpovm

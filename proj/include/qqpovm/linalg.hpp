#pragma once

// Dense complex matrices for the small (d <= 8) operators used throughout the
// library, plus the Hermitian spectral routines built on them.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qqpovm {

using Complex = std::complex<double>;

/// Absolute epsilon used by validity predicates.
struct Tolerance {
    double abs_eps = 1e-10;

    Tolerance() = default;
    explicit Tolerance(double eps);
};

/// Looser bound used when checking reconstructed quantities (eigen
/// reconstruction, squared roots).
inline constexpr double kReconstructionEps = 1e-9;

/// Bound on the imaginary part of a trace that should be real.
inline constexpr double kRealTraceEps = 1e-12;

class ComplexMatrix {
public:
    ComplexMatrix() = default;
    /// Zero-filled rows x cols matrix.
    ComplexMatrix(std::size_t rows, std::size_t cols);
    /// Row-major literal, e.g. {{1, 0}, {0, {0, 1}}}. Rows must be equal length.
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> row_major);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t n) { return ComplexMatrix(n, n); }
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    /// v v^dagger for a column vector v.
    static ComplexMatrix outer(std::span<const Complex> v);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> data() const noexcept { return data_; }

    /// Column c as a vector.
    std::vector<Complex> column(std::size_t c) const;

    ComplexMatrix adjoint() const;
    Complex trace() const;
    /// Largest |entry|.
    double max_abs() const;
    bool all_finite() const;

    /// Copy embedded in the top-left corner of a zero n x m matrix.
    ComplexMatrix padded(std::size_t rows, std::size_t cols) const;
    /// Top-left rows x cols block.
    ComplexMatrix block(std::size_t rows, std::size_t cols) const;

    ComplexMatrix& operator+=(const ComplexMatrix& rhs);
    ComplexMatrix& operator-=(const ComplexMatrix& rhs);
    ComplexMatrix& operator*=(Complex s);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(const ComplexMatrix& lhs, const ComplexMatrix& rhs);
ComplexMatrix operator*(ComplexMatrix m, Complex s);
ComplexMatrix operator*(Complex s, ComplexMatrix m);

/// Max entry-wise |a - b|. Throws DimensionError on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Tr(a b), checked to be real within kRealTraceEps. Intended for products of
/// Hermitian operators such as Tr(K rho).
double real_trace_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Checked real part of a trace that must be real.
double real_trace(const ComplexMatrix& m);

/// (M + M^dagger) / 2.
ComplexMatrix hermitian_part(const ComplexMatrix& m);

bool is_hermitian(const ComplexMatrix& m, Tolerance tol = {});
/// Max |M^2 - M|.
double idempotence_residual(const ComplexMatrix& m);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column i pairs with values[i]

    /// sum_i f(lambda_i) v_i v_i^dagger
    template <typename F>
    ComplexMatrix apply(F&& f) const;
};

/// Eigendecomposition of the Hermitian part of m by cyclic complex Jacobi
/// rotations.
EigenDecomposition eig_hermitian(const ComplexMatrix& m);

/// Smallest eigenvalue of the Hermitian part of m.
double min_eigenvalue(const ComplexMatrix& m);

/// Principal square root of a Hermitian PSD matrix. Eigenvalues in
/// [-tol, tol] are set to zero before the root; anything below -tol raises
/// NotPsdError.
ComplexMatrix principal_sqrt(const ComplexMatrix& m, Tolerance tol = {});

template <typename F>
ComplexMatrix EigenDecomposition::apply(F&& f) const {
    const std::size_t n = values.size();
    ComplexMatrix out(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const double fk = f(values[k]);
        if (fk == 0.0) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const Complex vik = vectors(i, k) * fk;
            for (std::size_t j = 0; j < n; ++j) out(i, j) += vik * std::conj(vectors(j, k));
        }
    }
    return out;
}

}  // namespace qqpovm

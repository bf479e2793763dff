// Copyright 2026 The ctclab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CTCLAB_QMAT_H
#define CTCLAB_QMAT_H

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace ctclab {

using Complex = std::complex<double>;

/// Default numerical tolerances shared by the whole library.
namespace tol {
inline constexpr double kHermitian = 1e-10;
inline constexpr double kOrthonormal = 1e-10;
inline constexpr double kReconstruction = 1e-9;
inline constexpr double kPositivity = 1e-10;
inline constexpr double kProbability = 1e-12;
}  // namespace tol

/// Dense complex matrix, row-major. Every operator and state in the library
/// is ultimately one of these.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    ComplexMatrix(std::size_t rows, std::size_t cols);
    ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static ComplexMatrix identity(std::size_t n);
    static ComplexMatrix zeros(std::size_t rows, std::size_t cols);
    static ComplexMatrix diagonal(std::span<const double> values);
    static ComplexMatrix diagonal(std::initializer_list<double> values);
    /// Column vector from amplitudes.
    static ComplexMatrix column(std::span<const Complex> amplitudes);
    /// |v><v| for an amplitude vector.
    static ComplexMatrix outer(std::span<const Complex> ket, std::span<const Complex> bra);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }
    bool empty() const { return data_.empty(); }

    Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<const Complex> entries() const { return data_; }
    std::span<Complex> entries() { return data_; }

    Complex trace() const;
    bool all_finite() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

   private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

/// Ordered subsystem dimensions of a composite space. Factor 0 is the
/// chronology-respecting system, factor 1 the CTC rail.
struct DimensionSplit {
    std::vector<std::size_t> factors;

    std::size_t total() const;
    std::size_t size() const { return factors.size(); }
    std::size_t operator[](std::size_t i) const { return factors[i]; }
    friend bool operator==(const DimensionSplit&, const DimensionSplit&) = default;
};

/// Kronecker product; `a` is the leftmost factor.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);

/// Reduced matrix on subsystem `keep`, tracing out every other factor.
/// Works for any square operator, not only density matrices.
ComplexMatrix partial_trace(const ComplexMatrix& m, const DimensionSplit& split, std::size_t keep);

struct Eigensystem {
    std::vector<double> values;  // ascending
    ComplexMatrix vectors;       // column k pairs with values[k]
};

/// Cyclic complex Jacobi. Throws std::invalid_argument for non-Hermitian
/// input and std::runtime_error if 100 sweeps are not enough.
Eigensystem eig_hermitian(const ComplexMatrix& h);

struct SingularSystem {
    std::vector<double> values;  // ascending
    ComplexMatrix right_vectors;  // column k pairs with values[k]
};

/// Singular values and right singular vectors via one-sided Jacobi. Small
/// singular values keep their relative accuracy, which matters for kernels.
SingularSystem svd_right(const ComplexMatrix& a);

/// Gauss-Jordan inverse with partial pivoting. Throws on singular input.
ComplexMatrix inverse(const ComplexMatrix& a);

double trace_distance(const ComplexMatrix& r, const ComplexMatrix& s);
double entropy_bits(const ComplexMatrix& rho);

struct DensityCheck {
    bool ok = false;
    std::string diagnostic;
    explicit operator bool() const { return ok; }
};

DensityCheck is_density(const ComplexMatrix& m, double tolerance = tol::kPositivity);
bool is_unitary(const ComplexMatrix& m, double tolerance = tol::kHermitian);
bool is_hermitian(const ComplexMatrix& m, double tolerance = tol::kHermitian);

/// Largest absolute entry-wise difference.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& a);
/// (m + m^dag) / 2
ComplexMatrix hermitian_part(const ComplexMatrix& m);

/// Column-stacking vectorization: vec(m)[c * rows + r] = m(r, c).
std::vector<Complex> vec(const ComplexMatrix& m);
ComplexMatrix unvec(std::span<const Complex> v, std::size_t rows, std::size_t cols);

/// Hilbert-Schmidt inner product tr(a^dag b).
Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace ctclab

#endif

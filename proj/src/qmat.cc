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

#include "ctclab/qmat.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace ctclab {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        std::ostringstream msg;
        msg << what << ": shape mismatch " << a.rows() << "x" << a.cols() << " vs " << b.rows() << "x"
            << b.cols();
        throw std::invalid_argument(msg.str());
    }
}

void require_square(const ComplexMatrix& a, const char* what) {
    if (!a.is_square()) {
        throw std::invalid_argument(std::string(what) + ": matrix is not square");
    }
}

// Unitary 2x2 rotation (acting on columns p, q) that zeroes the off-diagonal
// entry of the Hermitian block [[app, apq], [conj(apq), aqq]] under J^dag A J.
struct JacobiRotation {
    Complex pp, pq, qp, qq;
};

JacobiRotation hermitian_rotation(double app, double aqq, Complex apq) {
    double g = std::abs(apq);
    Complex phase = apq / g;  // e^{i phi}
    double theta = (aqq - app) / (2.0 * g);
    double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
    if (theta < 0) {
        t = -t;
    }
    double c = 1.0 / std::sqrt(t * t + 1.0);
    double s = t * c;
    Complex conj_phase = std::conj(phase);
    return {c, s, -s * conj_phase, c * conj_phase};
}

void rotate_columns(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& j) {
    for (std::size_t k = 0; k < m.rows(); ++k) {
        Complex mp = m(k, p);
        Complex mq = m(k, q);
        m(k, p) = mp * j.pp + mq * j.qp;
        m(k, q) = mp * j.pq + mq * j.qq;
    }
}

void rotate_rows_adjoint(ComplexMatrix& m, std::size_t p, std::size_t q, const JacobiRotation& j) {
    for (std::size_t k = 0; k < m.cols(); ++k) {
        Complex mp = m(p, k);
        Complex mq = m(q, k);
        m(p, k) = std::conj(j.pp) * mp + std::conj(j.qp) * mq;
        m(q, k) = std::conj(j.pq) * mp + std::conj(j.qq) * mq;
    }
}

double max_abs_entry(const ComplexMatrix& m) {
    double best = 0;
    for (const Complex& z : m.entries()) {
        best = std::max(best, std::abs(z));
    }
    return best;
}

constexpr int kMaxSweeps = 100;
constexpr double kOffDiagonalThreshold = 1e-13;

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows * cols) {
        throw std::invalid_argument("ComplexMatrix: entry count does not match rows x cols");
    }
    if (!all_finite()) {
        throw std::invalid_argument("ComplexMatrix: non-finite entry");
    }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) {
            throw std::invalid_argument("ComplexMatrix: ragged initializer");
        }
        data_.insert(data_.end(), row.begin(), row.end());
    }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, i) = 1.0;
    }
    return m;
}

ComplexMatrix ComplexMatrix::zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
    ComplexMatrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        m(i, i) = values[i];
    }
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
    return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> amplitudes) {
    return ComplexMatrix(amplitudes.size(), 1, std::vector<Complex>(amplitudes.begin(), amplitudes.end()));
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> ket, std::span<const Complex> bra) {
    ComplexMatrix m(ket.size(), bra.size());
    for (std::size_t r = 0; r < ket.size(); ++r) {
        for (std::size_t c = 0; c < bra.size(); ++c) {
            m(r, c) = ket[r] * std::conj(bra[c]);
        }
    }
    return m;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0;
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
        t += (*this)(i, i);
    }
    return t;
}

bool ComplexMatrix::all_finite() const {
    return std::all_of(data_.begin(), data_.end(),
                       [](const Complex& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator+=");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] += other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_shape(*this, other, "operator-=");
    for (std::size_t i = 0; i < data_.size(); ++i) {
        data_[i] -= other.data_[i];
    }
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (Complex& z : data_) {
        z *= scale;
    }
    return *this;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("matrix product: inner dimensions differ");
    }
    ComplexMatrix out(a.rows(), b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            Complex ark = a(r, k);
            if (ark == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < b.cols(); ++c) {
                out(r, c) += ark * b(k, c);
            }
        }
    }
    return out;
}

std::size_t DimensionSplit::total() const {
    return std::accumulate(factors.begin(), factors.end(), std::size_t{1}, std::multiplies<>());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t ar = 0; ar < a.rows(); ++ar) {
        for (std::size_t ac = 0; ac < a.cols(); ++ac) {
            Complex s = a(ar, ac);
            for (std::size_t br = 0; br < b.rows(); ++br) {
                for (std::size_t bc = 0; bc < b.cols(); ++bc) {
                    out(ar * b.rows() + br, ac * b.cols() + bc) = s * b(br, bc);
                }
            }
        }
    }
    return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
    ComplexMatrix out(a.cols(), a.rows());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) {
            out(c, r) = std::conj(a(r, c));
        }
    }
    return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const DimensionSplit& split, std::size_t keep) {
    require_square(m, "partial_trace");
    if (split.factors.empty() || split.total() != m.rows()) {
        throw std::invalid_argument("partial_trace: dimension split does not match matrix");
    }
    if (keep >= split.size()) {
        throw std::invalid_argument("partial_trace: subsystem index out of range");
    }
    std::vector<std::size_t> strides(split.size());
    std::size_t stride = 1;
    for (std::size_t i = split.size(); i-- > 0;) {
        strides[i] = stride;
        stride *= split[i];
    }
    // Offsets of every basis index of the traced-out environment.
    std::vector<std::size_t> env_offsets{0};
    for (std::size_t i = 0; i < split.size(); ++i) {
        if (i == keep) {
            continue;
        }
        std::vector<std::size_t> next;
        next.reserve(env_offsets.size() * split[i]);
        for (std::size_t off : env_offsets) {
            for (std::size_t digit = 0; digit < split[i]; ++digit) {
                next.push_back(off + digit * strides[i]);
            }
        }
        env_offsets = std::move(next);
    }
    std::size_t d = split[keep];
    std::size_t ks = strides[keep];
    ComplexMatrix out(d, d);
    for (std::size_t a = 0; a < d; ++a) {
        for (std::size_t b = 0; b < d; ++b) {
            Complex sum = 0;
            for (std::size_t off : env_offsets) {
                sum += m(off + a * ks, off + b * ks);
            }
            out(a, b) = sum;
        }
    }
    return out;
}

bool is_hermitian(const ComplexMatrix& m, double tolerance) {
    if (!m.is_square()) {
        return false;
    }
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = r; c < m.cols(); ++c) {
            if (std::abs(m(r, c) - std::conj(m(c, r))) > tolerance) {
                return false;
            }
        }
    }
    return true;
}

Eigensystem eig_hermitian(const ComplexMatrix& h) {
    require_square(h, "eig_hermitian");
    if (!is_hermitian(h, tol::kHermitian * std::max(1.0, max_abs_entry(h)))) {
        throw std::invalid_argument("eig_hermitian: matrix is not Hermitian");
    }
    const std::size_t n = h.rows();
    ComplexMatrix a = hermitian_part(h);
    ComplexMatrix v = ComplexMatrix::identity(n);
    const double scale = std::max(1.0, frobenius_norm(a));

    auto off_norm = [&] {
        double s = 0;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                if (r != c) {
                    s += std::norm(a(r, c));
                }
            }
        }
        return std::sqrt(s);
    };

    int sweep = 0;
    while (off_norm() > kOffDiagonalThreshold * scale) {
        if (++sweep > kMaxSweeps) {
            throw std::runtime_error("eig_hermitian: no convergence after 100 sweeps");
        }
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                Complex apq = a(p, q);
                if (std::abs(apq) < 1e-300) {
                    continue;
                }
                JacobiRotation j = hermitian_rotation(a(p, p).real(), a(q, q).real(), apq);
                rotate_columns(a, p, q, j);
                rotate_rows_adjoint(a, p, q, j);
                a(p, q) = 0;
                a(q, p) = 0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                rotate_columns(v, p, q, j);
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x).real() < a(y, y).real(); });
    Eigensystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = a(order[k], order[k]).real();
        for (std::size_t r = 0; r < n; ++r) {
            out.vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

SingularSystem svd_right(const ComplexMatrix& input) {
    const std::size_t n = input.cols();
    ComplexMatrix a = input;
    ComplexMatrix v = ComplexMatrix::identity(n);
    constexpr double kEps = 1e-15;
    // Pairs whose overlap is below roundoff of the whole matrix count as orthogonal;
    // otherwise columns made of pure roundoff are rotated forever.
    const double floor = kEps * kEps * std::max(1.0, frobenius_norm(a) * frobenius_norm(a));

    auto column_dot = [&](std::size_t i, std::size_t j) {
        Complex s = 0;
        for (std::size_t k = 0; k < a.rows(); ++k) {
            s += std::conj(a(k, i)) * a(k, j);
        }
        return s;
    };

    bool rotated = true;
    int sweep = 0;
    while (rotated) {
        if (++sweep > kMaxSweeps) {
            throw std::runtime_error("svd_right: no convergence after 100 sweeps");
        }
        rotated = false;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            for (std::size_t j = i + 1; j < n; ++j) {
                double alpha = column_dot(i, i).real();
                double beta = column_dot(j, j).real();
                Complex gamma = column_dot(i, j);
                if (alpha == 0.0 || beta == 0.0 || std::abs(gamma) <= kEps * std::sqrt(alpha * beta) ||
                    std::abs(gamma) <= floor) {
                    continue;
                }
                rotated = true;
                JacobiRotation rot = hermitian_rotation(alpha, beta, gamma);
                rotate_columns(a, i, j, rot);
                rotate_columns(v, i, j, rot);
            }
        }
    }

    std::vector<double> norms(n);
    for (std::size_t k = 0; k < n; ++k) {
        norms[k] = std::sqrt(column_dot(k, k).real());
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return norms[x] < norms[y]; });
    SingularSystem out{std::vector<double>(n), ComplexMatrix(n, n)};
    for (std::size_t k = 0; k < n; ++k) {
        out.values[k] = norms[order[k]];
        for (std::size_t r = 0; r < n; ++r) {
            out.right_vectors(r, k) = v(r, order[k]);
        }
    }
    return out;
}

ComplexMatrix inverse(const ComplexMatrix& m) {
    require_square(m, "inverse");
    const std::size_t n = m.rows();
    ComplexMatrix a = m;
    ComplexMatrix inv = ComplexMatrix::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r) {
            if (std::abs(a(r, col)) > std::abs(a(pivot, col))) {
                pivot = r;
            }
        }
        if (std::abs(a(pivot, col)) < 1e-300) {
            throw std::runtime_error("inverse: matrix is singular");
        }
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) {
                std::swap(a(pivot, c), a(col, c));
                std::swap(inv(pivot, c), inv(col, c));
            }
        }
        Complex scale = 1.0 / a(col, col);
        for (std::size_t c = 0; c < n; ++c) {
            a(col, c) *= scale;
            inv(col, c) *= scale;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) {
                continue;
            }
            Complex f = a(r, col);
            if (f == Complex{}) {
                continue;
            }
            for (std::size_t c = 0; c < n; ++c) {
                a(r, c) -= f * a(col, c);
                inv(r, c) -= f * inv(col, c);
            }
        }
    }
    return inv;
}

double trace_distance(const ComplexMatrix& r, const ComplexMatrix& s) {
    require_same_shape(r, s, "trace_distance");
    Eigensystem es = eig_hermitian(hermitian_part(r - s));
    double sum = 0;
    for (double lambda : es.values) {
        sum += std::abs(lambda);
    }
    return 0.5 * sum;
}

double entropy_bits(const ComplexMatrix& rho) {
    Eigensystem es = eig_hermitian(hermitian_part(rho));
    double h = 0;
    for (double lambda : es.values) {
        if (lambda > 0) {
            h -= lambda * std::log2(lambda);
        }
    }
    return std::max(h, 0.0);
}

DensityCheck is_density(const ComplexMatrix& m, double tolerance) {
    if (!m.is_square() || m.empty()) {
        return {false, "not square"};
    }
    if (!m.all_finite()) {
        return {false, "non-finite entry"};
    }
    if (!is_hermitian(m, tolerance)) {
        return {false, "not Hermitian"};
    }
    double min_eig = eig_hermitian(m).values.front();
    if (min_eig < -tolerance) {
        std::ostringstream msg;
        msg << "not positive: minimum eigenvalue " << min_eig;
        return {false, msg.str()};
    }
    Complex t = m.trace();
    if (std::abs(t - 1.0) > tolerance) {
        std::ostringstream msg;
        msg << "trace " << t.real() << " is not 1";
        return {false, msg.str()};
    }
    return {true, ""};
}

bool is_unitary(const ComplexMatrix& m, double tolerance) {
    if (!m.is_square()) {
        return false;
    }
    return max_abs_diff(dagger(m) * m, ComplexMatrix::identity(m.rows())) <= tolerance;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "max_abs_diff");
    double best = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        best = std::max(best, std::abs(ea[i] - eb[i]));
    }
    return best;
}

double frobenius_norm(const ComplexMatrix& a) {
    double s = 0;
    for (const Complex& z : a.entries()) {
        s += std::norm(z);
    }
    return std::sqrt(s);
}

ComplexMatrix hermitian_part(const ComplexMatrix& m) {
    require_square(m, "hermitian_part");
    ComplexMatrix out(m.rows(), m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            out(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
        }
    }
    return out;
}

std::vector<Complex> vec(const ComplexMatrix& m) {
    std::vector<Complex> out(m.rows() * m.cols());
    for (std::size_t c = 0; c < m.cols(); ++c) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            out[c * m.rows() + r] = m(r, c);
        }
    }
    return out;
}

ComplexMatrix unvec(std::span<const Complex> v, std::size_t rows, std::size_t cols) {
    if (v.size() != rows * cols) {
        throw std::invalid_argument("unvec: length does not match shape");
    }
    ComplexMatrix out(rows, cols);
    for (std::size_t c = 0; c < cols; ++c) {
        for (std::size_t r = 0; r < rows; ++r) {
            out(r, c) = v[c * rows + r];
        }
    }
    return out;
}

Complex hs_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_shape(a, b, "hs_inner");
    Complex s = 0;
    auto ea = a.entries();
    auto eb = b.entries();
    for (std::size_t i = 0; i < ea.size(); ++i) {
        s += std::conj(ea[i]) * eb[i];
    }
    return s;
}

}  // namespace ctclab

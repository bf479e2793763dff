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

#include "ctclab/dctc.h"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ctclab {

namespace {

constexpr int kCesaroWindow = 32;

// tr_{drop}[U (input x rho) U^dag] evaluated directly on the joint space.
ComplexMatrix joint_then_trace(const DeutschInstance& inst, const ComplexMatrix& rho_ctc, std::size_t keep) {
    ComplexMatrix joint = inst.unitary * kron(inst.input.matrix(), rho_ctc) * dagger(inst.unitary);
    return partial_trace(joint, inst.split, keep);
}

void require_ctc_dim(const DeutschInstance& inst, const DensityMatrix& rho) {
    if (rho.dimension() != inst.ctc_dim()) {
        throw std::invalid_argument("CTC state dimension differs from the instance's CTC rail");
    }
}

// Block K_ab = (<a| x I) U (|b> x I) on the CTC factor.
ComplexMatrix unitary_block(const DeutschInstance& inst, std::size_t a, std::size_t b) {
    std::size_t d = inst.ctc_dim();
    ComplexMatrix k(d, d);
    for (std::size_t r = 0; r < d; ++r) {
        for (std::size_t c = 0; c < d; ++c) {
            k(r, c) = inst.unitary(a * d + r, b * d + c);
        }
    }
    return k;
}

ComplexMatrix conjugate(const ComplexMatrix& m) {
    ComplexMatrix out = m;
    for (Complex& z : out.entries()) {
        z = std::conj(z);
    }
    return out;
}

// Columns [first, first + count) of m as matrices of shape d x d.
std::vector<ComplexMatrix> columns_as_operators(const ComplexMatrix& m, std::size_t count, std::size_t d) {
    std::vector<ComplexMatrix> out;
    std::vector<Complex> column(m.rows());
    for (std::size_t k = 0; k < count; ++k) {
        for (std::size_t r = 0; r < m.rows(); ++r) {
            column[r] = m(r, k);
        }
        out.push_back(unvec(column, d, d));
    }
    return out;
}

ComplexMatrix leading_columns(const ComplexMatrix& m, std::size_t count) {
    ComplexMatrix out(m.rows(), count);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < count; ++c) {
            out(r, c) = m(r, c);
        }
    }
    return out;
}

double real_inner(const ComplexMatrix& a, const ComplexMatrix& b) { return hs_inner(a, b).real(); }

// Real Gram-Schmidt in the Hilbert-Schmidt inner product, keeping at most
// `limit` elements whose residual norm exceeds 1e-6.
std::vector<ComplexMatrix> orthonormalize(const std::vector<ComplexMatrix>& candidates, std::size_t limit) {
    std::vector<ComplexMatrix> basis;
    for (const auto& cand : candidates) {
        if (basis.size() == limit) {
            break;
        }
        ComplexMatrix v = cand;
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& b : basis) {
                v -= b * Complex(real_inner(b, v));
            }
        }
        double n = frobenius_norm(v);
        if (n > 1e-6) {
            basis.push_back(v * Complex(1.0 / n));
        }
    }
    return basis;
}

// Hermitize, clamp eigenvalues within the positivity slack and renormalize.
ComplexMatrix clamp_to_density(const ComplexMatrix& m) {
    ComplexMatrix h = hermitian_part(m);
    double t = h.trace().real();
    if (!(std::abs(t) > 1e-300)) {
        throw SolverError("no density fixed point found: fixed operator has zero trace");
    }
    h *= Complex(1.0 / t);
    Eigensystem es = eig_hermitian(h);
    if (es.values.front() >= 0.0) {
        return h;
    }
    if (es.values.front() < -1e-8) {
        std::ostringstream msg;
        msg << "no density fixed point found: minimum eigenvalue " << es.values.front();
        throw SolverError(msg.str());
    }
    std::size_t n = h.rows();
    ComplexMatrix out = ComplexMatrix::zeros(n, n);
    double total = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double lambda = std::max(0.0, es.values[k]);
        total += lambda;
        for (std::size_t r = 0; r < n; ++r) {
            for (std::size_t c = 0; c < n; ++c) {
                out(r, c) += lambda * es.vectors(r, k) * std::conj(es.vectors(c, k));
            }
        }
    }
    return out * Complex(1.0 / total);
}

// Gradient of the von Neumann entropy (bits) along a traceless direction t:
// -tr(t log2 rho). Eigenvalues are floored so the gradient stays finite.
double entropy_gradient(const Eigensystem& es, const ComplexMatrix& t) {
    std::size_t n = t.rows();
    double g = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double log_lambda = std::log2(std::max(es.values[k], 1e-300));
        Complex tkk = 0;  // <v_k| t |v_k>
        for (std::size_t r = 0; r < n; ++r) {
            Complex row = 0;
            for (std::size_t c = 0; c < n; ++c) {
                row += t(r, c) * es.vectors(c, k);
            }
            tkk += std::conj(es.vectors(r, k)) * row;
        }
        g -= tkk.real() * log_lambda;
    }
    return g;
}

ComplexMatrix maximize_entropy(ComplexMatrix rho, const std::vector<ComplexMatrix>& directions,
                               const FixedPointOptions& options) {
    if (directions.empty()) {
        return rho;
    }
    double entropy = entropy_bits(rho);
    double step = 1.0;
    for (int it = 0; it < options.max_ascent_steps; ++it) {
        Eigensystem es = eig_hermitian(hermitian_part(rho));
        std::vector<double> grad(directions.size());
        double grad_sq = 0;
        for (std::size_t i = 0; i < directions.size(); ++i) {
            grad[i] = entropy_gradient(es, directions[i]);
            grad_sq += grad[i] * grad[i];
        }
        if (std::sqrt(grad_sq) <= options.ascent_tolerance) {
            break;
        }
        ComplexMatrix ascent = ComplexMatrix::zeros(rho.rows(), rho.cols());
        for (std::size_t i = 0; i < directions.size(); ++i) {
            ascent += directions[i] * Complex(grad[i]);
        }
        bool moved = false;
        step = std::min(step * 2.0, 1e6);
        while (step > 1e-18) {
            ComplexMatrix trial = hermitian_part(rho + ascent * Complex(step));
            if (eig_hermitian(trial).values.front() > 0.0) {
                double trial_entropy = entropy_bits(trial);
                if (trial_entropy >= entropy + 1e-4 * step * grad_sq) {
                    double gain = trial_entropy - entropy;
                    rho = std::move(trial);
                    entropy = trial_entropy;
                    moved = true;
                    if (gain < options.ascent_tolerance * 1e-3) {
                        return rho;
                    }
                    break;
                }
            }
            step *= 0.5;
        }
        if (!moved) {
            break;
        }
    }
    return rho;
}

}  // namespace

void DeutschInstance::validate() const {
    if (split.size() != 2) {
        throw std::invalid_argument("DeutschInstance: split must have two factors");
    }
    if (unitary.rows() != split.total() || !unitary.is_square()) {
        throw std::invalid_argument("DeutschInstance: unitary dimension differs from d_cr * d_ctc");
    }
    if (!is_unitary(unitary, 1e-10)) {
        throw std::invalid_argument("DeutschInstance: interaction is not unitary");
    }
    if (input.dimension() != split[0]) {
        throw std::invalid_argument("DeutschInstance: input dimension differs from d_cr");
    }
}

DeutschInstance make_instance(ComplexMatrix unitary, DensityMatrix input) {
    std::size_t d_cr = input.dimension();
    if (d_cr == 0 || unitary.rows() % d_cr != 0) {
        throw std::invalid_argument("make_instance: unitary dimension is not a multiple of the input dimension");
    }
    DimensionSplit split{{d_cr, unitary.rows() / d_cr}};
    DeutschInstance inst{std::move(unitary), std::move(input), std::move(split)};
    inst.validate();
    return inst;
}

std::string_view to_string(FixedPointMethod m) { return m == FixedPointMethod::kernel ? "kernel" : "iteration"; }

DensityMatrix deutsch_map(const DeutschInstance& inst, const DensityMatrix& rho_ctc) {
    require_ctc_dim(inst, rho_ctc);
    return to_density(joint_then_trace(inst, rho_ctc.matrix(), 1));
}

DensityMatrix cr_output(const DeutschInstance& inst, const DensityMatrix& rho_ctc) {
    require_ctc_dim(inst, rho_ctc);
    return to_density(joint_then_trace(inst, rho_ctc.matrix(), 0), inst.input.split());
}

ComplexMatrix superoperator(const DeutschInstance& inst) {
    // map(X) = sum_{a,b,b'} in_{bb'} K_ab X K_ab'^dag and vec(A X B) = (B^T x A) vec(X).
    const std::size_t d_cr = inst.cr_dim();
    const std::size_t d = inst.ctc_dim();
    const ComplexMatrix& in = inst.input.matrix();
    ComplexMatrix s = ComplexMatrix::zeros(d * d, d * d);
    for (std::size_t a = 0; a < d_cr; ++a) {
        std::vector<ComplexMatrix> blocks;
        for (std::size_t b = 0; b < d_cr; ++b) {
            blocks.push_back(unitary_block(inst, a, b));
        }
        for (std::size_t b = 0; b < d_cr; ++b) {
            for (std::size_t bp = 0; bp < d_cr; ++bp) {
                if (in(b, bp) == Complex{}) {
                    continue;
                }
                s += kron(conjugate(blocks[bp]), blocks[b]) * in(b, bp);
            }
        }
    }
    return s;
}

FixedPointReport solve_fixed_points(const DeutschInstance& inst, const FixedPointOptions& options) {
    inst.validate();
    const std::size_t d = inst.ctc_dim();
    const std::size_t n = d * d;
    ComplexMatrix shifted = superoperator(inst) - ComplexMatrix::identity(n);

    SingularSystem right = svd_right(shifted);
    std::size_t kernel_dim = 0;
    while (kernel_dim < n && right.values[kernel_dim] <= options.kernel_threshold) {
        ++kernel_dim;
    }
    if (kernel_dim == 0) {
        std::ostringstream msg;
        msg << "no density fixed point found: smallest singular value of S - I is " << right.values.front();
        throw SolverError(msg.str());
    }
    SingularSystem left = svd_right(dagger(shifted));

    // Hermitian basis of the fixed space. The map commutes with the adjoint, so
    // the Hermitian and anti-Hermitian parts of each kernel element are fixed too.
    std::vector<ComplexMatrix> candidates;
    for (const auto& k : columns_as_operators(right.right_vectors, kernel_dim, d)) {
        candidates.push_back(hermitian_part(k));
        candidates.push_back(hermitian_part(k * Complex(0.0, -1.0)));
    }
    std::vector<ComplexMatrix> basis = orthonormalize(candidates, kernel_dim);

    // Spectral projection onto the fixed space applied to I/d: a fixed density
    // matrix with maximal support.
    ComplexMatrix r = leading_columns(right.right_vectors, kernel_dim);
    ComplexMatrix l = leading_columns(left.right_vectors, kernel_dim);
    ComplexMatrix projection = r * inverse(dagger(l) * r) * dagger(l);
    std::vector<Complex> mixed = vec(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)));
    ComplexMatrix image = projection * ComplexMatrix::column(mixed);
    ComplexMatrix start = clamp_to_density(unvec(image.entries(), d, d));

    ComplexMatrix chosen = start;
    if (basis.size() > 1) {
        std::vector<ComplexMatrix> traceless;
        for (const auto& b : basis) {
            traceless.push_back(b - start * b.trace());
        }
        chosen = maximize_entropy(start, orthonormalize(traceless, basis.size() - 1), options);
    }

    DensityMatrix rho = to_density(chosen);
    double residual = trace_distance(rho, deutsch_map(inst, rho));
    return FixedPointReport{rho, basis.size(), residual, entropy_bits(rho), FixedPointMethod::kernel,
                            std::move(basis)};
}

IterationResult iterate_fixed_point(const DeutschInstance& inst, const DensityMatrix& seed, double tolerance,
                                    int max_iter) {
    inst.validate();
    require_ctc_dim(inst, seed);
    // Raw matrices inside the loop; validation happens once on the way out.
    auto step = [&](const ComplexMatrix& m) { return hermitian_part(joint_then_trace(inst, m, 1)); };
    // Exact trace distance only once the cheap lower bound ||a-b||_F / 2 is within tolerance.
    auto residual_of = [&](const ComplexMatrix& a, const ComplexMatrix& b) {
        double lower = 0.5 * frobenius_norm(a - b);
        return lower > tolerance ? lower : trace_distance(a, b);
    };
    ComplexMatrix x = seed.matrix();
    ComplexMatrix next = step(x);
    double residual = residual_of(x, next);
    if (residual <= tolerance) {
        return {seed, 0, residual};
    }
    const std::size_t d = inst.ctc_dim();
    ComplexMatrix window_sum = ComplexMatrix::zeros(d, d);
    int window_count = 0;
    for (int it = 1; it <= max_iter; ++it) {
        window_sum += x;
        ++window_count;
        x = next;
        next = step(x);
        double iterate_residual = residual_of(x, next);
        if (iterate_residual <= tolerance) {
            return {to_density(x), it, iterate_residual};
        }
        ComplexMatrix average = window_sum * Complex(1.0 / window_count);
        double average_residual = residual_of(average, step(average));
        if (average_residual <= tolerance) {
            return {to_density(average), it, average_residual};
        }
        residual = std::min(iterate_residual, average_residual);
        if (window_count == kCesaroWindow) {
            x = average;
            next = step(x);
            window_sum = ComplexMatrix::zeros(d, d);
            window_count = 0;
        }
    }
    std::ostringstream msg;
    msg << "iterate_fixed_point: no convergence after " << max_iter << " iterations (residual " << residual << ")";
    throw NonConvergenceError(msg.str(), residual);
}

IterationResult iterate_fixed_point(const DeutschInstance& inst, double tolerance, int max_iter) {
    return iterate_fixed_point(inst, DensityMatrix::maximally_mixed(inst.ctc_dim()), tolerance, max_iter);
}

DensityMatrix evolve(const DeutschInstance& inst, const FixedPointOptions& options) {
    FixedPointReport report = solve_fixed_points(inst, options);
    return cr_output(inst, report.chosen);
}

}  // namespace ctclab

#include "seldkit/eigen4.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace seld {
namespace {

constexpr int kMaxSweeps = 50;
constexpr double kConvergenceScale = 1e-12;

double frobenius_norm(const HermitianMatrix4& r) {
    double s = 0.0;
    for (const auto& v : r.m) s += std::norm(v);
    return std::sqrt(s);
}

double off_diagonal_norm(const HermitianMatrix4& r) {
    double s = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i != j) s += std::norm(r.at(i, j));
        }
    }
    return std::sqrt(s);
}

// One complex Jacobi rotation zeroing the (p, q) off-diagonal entry.
// The 2x2 block is reduced to a real symmetric problem by factoring out the
// phase of a_pq, then rotated with the standard stable tangent formula.
void rotate(HermitianMatrix4& a, std::array<std::array<Complex, 4>, 4>& vec,
            int p, int q) {
    const Complex apq = a.at(p, q);
    const double r = std::abs(apq);
    if (r == 0.0) return;

    const Complex phase = apq / r;  // e^{i phi}
    const double alpha = a.at(p, p).real();
    const double beta = a.at(q, q).real();

    const double tau = (beta - alpha) / (2.0 * r);
    double t;
    if (tau >= 0.0) {
        t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
    } else {
        t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
    }
    const double c = 1.0 / std::sqrt(1.0 + t * t);
    const double s = t * c;

    // U is identity except U(p,p) = phase*c, U(p,q) = -phase*s,
    // U(q,p) = s, U(q,q) = c. Columns of `vec` accumulate V <- V * U.
    const Complex upp = phase * c;
    const Complex upq = -phase * s;
    const Complex uqp = Complex(s, 0.0);
    const Complex uqq = Complex(c, 0.0);

    // A <- U^H A U. Update rows/columns p and q.
    for (int k = 0; k < 4; ++k) {
        const Complex akp = a.at(k, p);
        const Complex akq = a.at(k, q);
        a.at(k, p) = akp * upp + akq * uqp;
        a.at(k, q) = akp * upq + akq * uqq;
    }
    for (int k = 0; k < 4; ++k) {
        const Complex apk = a.at(p, k);
        const Complex aqk = a.at(q, k);
        a.at(p, k) = std::conj(upp) * apk + std::conj(uqp) * aqk;
        a.at(q, k) = std::conj(upq) * apk + std::conj(uqq) * aqk;
    }
    // restore exact Hermitian structure on the touched entries
    a.at(p, q) = Complex(0.0, 0.0);
    a.at(q, p) = Complex(0.0, 0.0);
    a.at(p, p) = Complex(a.at(p, p).real(), 0.0);
    a.at(q, q) = Complex(a.at(q, q).real(), 0.0);

    for (int k = 0; k < 4; ++k) {
        const Complex vkp = vec[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)];
        const Complex vkq = vec[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)];
        vec[static_cast<std::size_t>(k)][static_cast<std::size_t>(p)] =
            vkp * upp + vkq * uqp;
        vec[static_cast<std::size_t>(k)][static_cast<std::size_t>(q)] =
            vkp * upq + vkq * uqq;
    }
}

void phase_fix(std::array<Complex, 4>& v) {
    int ref = 0;
    if (std::abs(v[0]) < 1e-9) {
        double best = 0.0;
        for (int i = 0; i < 4; ++i) {
            if (std::abs(v[static_cast<std::size_t>(i)]) > best) {
                best = std::abs(v[static_cast<std::size_t>(i)]);
                ref = i;
            }
        }
    }
    const double mag = std::abs(v[static_cast<std::size_t>(ref)]);
    if (mag == 0.0) return;
    const Complex rot = std::conj(v[static_cast<std::size_t>(ref)]) / mag;
    for (auto& x : v) x *= rot;
    v[static_cast<std::size_t>(ref)] =
        Complex(v[static_cast<std::size_t>(ref)].real(), 0.0);
}

}  // namespace

void accumulate_outer(HermitianMatrix4& r, const std::array<Complex, 4>& x) {
    for (int i = 0; i < 4; ++i) {
        for (int j = i; j < 4; ++j) {
            r.at(i, j) += x[static_cast<std::size_t>(i)] *
                          std::conj(x[static_cast<std::size_t>(j)]);
        }
    }
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < i; ++j) {
            r.at(i, j) = std::conj(r.at(j, i));
        }
    }
}

double hermitian_defect(const HermitianMatrix4& r) {
    double worst = 0.0;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            worst = std::max(worst,
                             std::abs(r.at(i, j) - std::conj(r.at(j, i))));
        }
    }
    return worst;
}

EigenDecomposition4 eigen_decompose_4x4(const HermitianMatrix4& input) {
    const double fnorm = frobenius_norm(input);
    if (hermitian_defect(input) > 1e-10 * std::max(fnorm, 1e-300)) {
        throw NumericError("eigen_decompose_4x4: matrix is not Hermitian");
    }

    // work on the symmetrized copy
    HermitianMatrix4 a;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            a.at(i, j) = 0.5 * (input.at(i, j) + std::conj(input.at(j, i)));
        }
        a.at(i, i) = Complex(a.at(i, i).real(), 0.0);
    }

    std::array<std::array<Complex, 4>, 4> vec{};
    for (int i = 0; i < 4; ++i) {
        vec[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] =
            Complex(1.0, 0.0);
    }

    const double tol =
        kConvergenceScale * std::max(std::abs(a.trace_real()), fnorm);
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        if (off_diagonal_norm(a) <= std::max(tol, 1e-300)) break;
        for (int p = 0; p < 3; ++p) {
            for (int q = p + 1; q < 4; ++q) {
                rotate(a, vec, p, q);
            }
        }
    }

    std::array<int, 4> order{0, 1, 2, 3};
    std::array<double, 4> diag{};
    for (int i = 0; i < 4; ++i) {
        diag[static_cast<std::size_t>(i)] = a.at(i, i).real();
    }
    std::sort(order.begin(), order.end(), [&diag](int l, int r) {
        return diag[static_cast<std::size_t>(l)] >
               diag[static_cast<std::size_t>(r)];
    });

    EigenDecomposition4 out;
    for (int i = 0; i < 4; ++i) {
        const int src = order[static_cast<std::size_t>(i)];
        out.values[static_cast<std::size_t>(i)] =
            diag[static_cast<std::size_t>(src)];
        std::array<Complex, 4> v{};
        double norm = 0.0;
        for (int k = 0; k < 4; ++k) {
            v[static_cast<std::size_t>(k)] =
                vec[static_cast<std::size_t>(k)][static_cast<std::size_t>(src)];
            norm += std::norm(v[static_cast<std::size_t>(k)]);
        }
        norm = std::sqrt(norm);
        if (norm > 0.0) {
            for (auto& x : v) x /= norm;
        }
        phase_fix(v);
        out.vectors[static_cast<std::size_t>(i)] = v;
    }
    return out;
}

EigenPair eigen_4x4_hermitian(const HermitianMatrix4& r) {
    const EigenDecomposition4 full = eigen_decompose_4x4(r);
    EigenPair pair;
    pair.values = full.values;
    pair.principal = full.vectors[0];
    return pair;
}

}  // namespace seld

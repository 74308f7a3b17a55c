#include "crowqed/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace crowqed {

double ComplexMatrix::frobenius_norm() const {
    double s = 0.0;
    for (const Complex& z : data_) s += std::norm(z);
    return std::sqrt(s);
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const Complex& z : data_) m = std::max(m, std::abs(z));
    return m;
}

double ComplexMatrix::hermiticity_defect() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t j = 0; j <= i && j < cols_; ++j)
            m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
    ComplexMatrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t l = 0; l < a.cols(); ++l) {
            const Complex ail = a(i, l);
            if (ail == 0.0) continue;
            const Complex* brow = b.row(l);
            Complex* crow = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j) crow[j] += ail * brow[j];
        }
    }
    return c;
}

ComplexMatrix adjoint(const ComplexMatrix& a) {
    ComplexMatrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

void lu_solve_in_place(ComplexMatrix a, ComplexMatrix& b, double pivot_tol) {
    const std::size_t n = a.rows();
    if (a.cols() != n || b.rows() != n)
        throw std::invalid_argument("lu_solve: shape mismatch");
    const double scale = a.max_abs();
    if (scale == 0.0) throw SingularMatrixError("lu_solve: zero matrix");
    const double tiny = pivot_tol * scale;

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);

    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(a(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::abs(a(r, col));
            if (v > best) { best = v; piv = r; }
        }
        if (best <= tiny) throw SingularMatrixError("lu_solve: singular system");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(a(col, j), a(piv, j));
            for (std::size_t j = 0; j < b.cols(); ++j) std::swap(b(col, j), b(piv, j));
        }
        const Complex inv_p = 1.0 / a(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = a(r, col) * inv_p;
            if (f == 0.0) continue;
            a(r, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) a(r, j) -= f * a(col, j);
            for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= f * b(col, j);
        }
    }
    // back substitution
    for (std::size_t ri = n; ri-- > 0;) {
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = b(ri, j);
            for (std::size_t cc = ri + 1; cc < n; ++cc) s -= a(ri, cc) * b(cc, j);
            b(ri, j) = s / a(ri, ri);
        }
    }
}

namespace {

// Householder reduction of a Hermitian matrix to real symmetric tridiagonal
// form. On return d holds the diagonal, e the subdiagonal (e[0..n-2], real
// non-negative), and q the accumulated unitary with A = Q T Q^dagger.
void tridiagonalize(ComplexMatrix a, std::vector<double>& d, std::vector<double>& e,
                    ComplexMatrix& q) {
    const std::size_t n = a.rows();
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    q = ComplexMatrix::identity(n);
    if (n == 0) return;

    // force exact Hermiticity of the working copy
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex(a(i, i).real(), 0.0);
        for (std::size_t j = 0; j < i; ++j) a(j, i) = std::conj(a(i, j));
    }

    std::vector<Complex> v(n), p(n), w(n);
    std::vector<Complex> sub(n > 0 ? n - 1 : 0);  // complex subdiagonal before phasing

    for (std::size_t j = 0; j + 2 < n; ++j) {
        const std::size_t m = n - j - 1;  // length of the column below the diagonal
        double sigma2 = 0.0;
        for (std::size_t r = 0; r < m; ++r) sigma2 += std::norm(a(j + 1 + r, j));
        const double sigma = std::sqrt(sigma2);
        if (sigma == 0.0) {
            sub[j] = 0.0;
            continue;
        }
        const Complex x0 = a(j + 1, j);
        const Complex phase = (x0 == 0.0) ? Complex(1.0, 0.0) : x0 / std::abs(x0);
        // reflector v maps the column to -phase*sigma * e1
        double vnorm2 = 0.0;
        for (std::size_t r = 0; r < m; ++r) v[r] = a(j + 1 + r, j);
        v[0] += phase * sigma;
        for (std::size_t r = 0; r < m; ++r) vnorm2 += std::norm(v[r]);
        if (vnorm2 == 0.0) {
            sub[j] = x0;
            continue;
        }
        const double tau = 2.0 / vnorm2;

        // p = tau * A_sub * v  (A_sub is the trailing (m x m) block)
        for (std::size_t r = 0; r < m; ++r) {
            Complex s = 0.0;
            for (std::size_t c = 0; c < m; ++c) s += a(j + 1 + r, j + 1 + c) * v[c];
            p[r] = tau * s;
        }
        // w = p - (tau/2) (v^dagger p) v
        Complex vp = 0.0;
        for (std::size_t r = 0; r < m; ++r) vp += std::conj(v[r]) * p[r];
        const Complex half = 0.5 * tau * vp;
        for (std::size_t r = 0; r < m; ++r) w[r] = p[r] - half * v[r];
        // A_sub <- A_sub - v w^dagger - w v^dagger
        for (std::size_t r = 0; r < m; ++r) {
            for (std::size_t c = 0; c < m; ++c)
                a(j + 1 + r, j + 1 + c) -= v[r] * std::conj(w[c]) + w[r] * std::conj(v[c]);
        }
        sub[j] = -phase * sigma;
        a(j + 1, j) = sub[j];
        for (std::size_t r = 1; r < m; ++r) a(j + 1 + r, j) = 0.0;

        // accumulate Q <- Q * H_j (apply reflector to the trailing columns of Q)
        for (std::size_t r = 0; r < n; ++r) {
            Complex s = 0.0;
            for (std::size_t c = 0; c < m; ++c) s += q(r, j + 1 + c) * v[c];
            s *= tau;
            for (std::size_t c = 0; c < m; ++c) q(r, j + 1 + c) -= s * std::conj(v[c]);
        }
    }
    if (n >= 2) sub[n - 2] = a(n - 1, n - 2);

    // absorb subdiagonal phases so that T is real with e >= 0:
    // with S = diag(u_i), u_i = u_{i-1} * sub_{i-1}/|sub_{i-1}|, the
    // transformed S^dagger T S has subdiagonal |sub| and Q picks up S.
    Complex u = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0) {
            const double mag = std::abs(sub[i - 1]);
            e[i - 1] = mag;
            if (mag > 0.0) u *= sub[i - 1] / mag;
        }
        if (u != Complex(1.0, 0.0))
            for (std::size_t r = 0; r < n; ++r) q(r, i) *= u;
        d[i] = a(i, i).real();
    }
}

// Implicit-shift QL on a real symmetric tridiagonal (d, e), rotations
// accumulated into the complex columns of q. Classic tql2 scheme.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e, ComplexMatrix& q) {
    const std::size_t n = d.size();
    if (n <= 1) return;
    const double eps = std::numeric_limits<double>::epsilon();
    std::vector<double> ework(e);
    ework.push_back(0.0);

    for (std::size_t l = 0; l < n; ++l) {
        int iterations = 0;
        std::size_t m;
        do {
            for (m = l; m + 1 < n; ++m) {
                const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
                if (std::abs(ework[m]) <= eps * dd) break;
            }
            if (m != l) {
                if (++iterations > 60)
                    throw std::runtime_error("hermitian_eigensystem: QL failed to converge");
                double g = (d[l + 1] - d[l]) / (2.0 * ework[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + ework[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, p = 0.0;
                for (std::size_t i = m; i-- > l;) {
                    double f = s * ework[i];
                    const double b = c * ework[i];
                    r = std::hypot(f, g);
                    ework[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= p;
                        ework[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - p;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    p = s * r;
                    d[i + 1] = g + p;
                    g = c * r - b;
                    for (std::size_t row = 0; row < n; ++row) {
                        const Complex qi1 = q(row, i + 1);
                        const Complex qi0 = q(row, i);
                        q(row, i + 1) = s * qi0 + c * qi1;
                        q(row, i) = c * qi0 - s * qi1;
                    }
                }
                if (r == 0.0 && m - l > 1) continue;
                d[l] -= p;
                ework[l] = g;
                ework[m] = 0.0;
            }
        } while (m != l);
    }
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& a) {
    if (a.rows() != a.cols()) throw std::invalid_argument("hermitian_eigensystem: not square");
    const std::size_t n = a.rows();
    EigenSystem out;
    out.vectors = ComplexMatrix::identity(n);
    if (n == 0) return out;

    std::vector<double> d, e;
    tridiagonalize(a, d, e, out.vectors);
    tridiagonal_ql(d, e, out.vectors);

    // sort ascending, permute eigenvector columns accordingly
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), 0);
    std::sort(idx.begin(), idx.end(), [&](std::size_t i, std::size_t j) { return d[i] < d[j]; });
    out.values.resize(n);
    ComplexMatrix sorted(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = d[idx[j]];
        for (std::size_t i = 0; i < n; ++i) sorted(i, j) = out.vectors(i, idx[j]);
    }
    out.vectors = std::move(sorted);
    return out;
}

}  // namespace crowqed

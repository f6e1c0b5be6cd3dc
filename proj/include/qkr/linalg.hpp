#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qkr {

using cx = std::complex<double>;

inline constexpr double kHermTol = 1e-10;
inline constexpr double kUnitaryTol = 1e-10;

/// Dense complex square matrix of fixed small dimension (2, 4, 16).
template <int N>
struct Matrix {
    std::array<cx, N * N> a{};

    static constexpr int dim = N;

    cx& operator()(int i, int j) { return a[i * N + j]; }
    const cx& operator()(int i, int j) const { return a[i * N + j]; }

    static Matrix zero() { return Matrix{}; }
    static Matrix identity() {
        Matrix m;
        for (int i = 0; i < N; ++i) m(i, i) = 1.0;
        return m;
    }

    Matrix adjoint() const {
        Matrix m;
        for (int i = 0; i < N; ++i)
            for (int j = 0; j < N; ++j) m(i, j) = std::conj((*this)(j, i));
        return m;
    }

    Matrix conjugate_entries() const {
        Matrix m;
        for (int i = 0; i < N * N; ++i) m.a[i] = std::conj(a[i]);
        return m;
    }

    cx trace() const {
        cx t = 0.0;
        for (int i = 0; i < N; ++i) t += (*this)(i, i);
        return t;
    }

    Matrix& operator+=(const Matrix& o) {
        for (int i = 0; i < N * N; ++i) a[i] += o.a[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        for (int i = 0; i < N * N; ++i) a[i] -= o.a[i];
        return *this;
    }
    Matrix& operator*=(cx s) {
        for (auto& v : a) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix x, const Matrix& y) { return x += y; }
    friend Matrix operator-(Matrix x, const Matrix& y) { return x -= y; }
    friend Matrix operator*(cx s, Matrix x) { return x *= s; }
    friend Matrix operator*(Matrix x, cx s) { return x *= s; }

    friend Matrix operator*(const Matrix& x, const Matrix& y) {
        Matrix r;
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < N; ++k) {
                const cx xik = x(i, k);
                if (xik == cx{}) continue;
                for (int j = 0; j < N; ++j) r(i, j) += xik * y(k, j);
            }
        return r;
    }
};

/// Column vector companion to Matrix.
template <int N>
struct Vector {
    std::array<cx, N> a{};

    static constexpr int dim = N;

    cx& operator[](int i) { return a[i]; }
    const cx& operator[](int i) const { return a[i]; }

    double norm() const {
        double s = 0.0;
        for (const auto& v : a) s += std::norm(v);
        return std::sqrt(s);
    }

    Vector conjugate_entries() const {
        Vector v;
        for (int i = 0; i < N; ++i) v[i] = std::conj(a[i]);
        return v;
    }

    Vector& operator+=(const Vector& o) {
        for (int i = 0; i < N; ++i) a[i] += o.a[i];
        return *this;
    }
    Vector& operator-=(const Vector& o) {
        for (int i = 0; i < N; ++i) a[i] -= o.a[i];
        return *this;
    }
    Vector& operator*=(cx s) {
        for (auto& v : a) v *= s;
        return *this;
    }

    friend Vector operator+(Vector x, const Vector& y) { return x += y; }
    friend Vector operator-(Vector x, const Vector& y) { return x -= y; }
    friend Vector operator*(cx s, Vector x) { return x *= s; }
};

using Mat2 = Matrix<2>;
using Mat4 = Matrix<4>;
using Vec2 = Vector<2>;
using Vec4 = Vector<4>;
using Vec16 = Vector<16>;

/// <x|y>, antilinear in the first argument.
template <int N>
cx inner(const Vector<N>& x, const Vector<N>& y) {
    cx s = 0.0;
    for (int i = 0; i < N; ++i) s += std::conj(x[i]) * y[i];
    return s;
}

/// |x><y|
template <int N>
Matrix<N> outer(const Vector<N>& x, const Vector<N>& y) {
    Matrix<N> m;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) m(i, j) = x[i] * std::conj(y[j]);
    return m;
}

template <int N>
Matrix<N> projector(const Vector<N>& x) {
    return outer(x, x);
}

template <int N>
Vector<N> apply(const Matrix<N>& m, const Vector<N>& v) {
    Vector<N> r;
    for (int i = 0; i < N; ++i) {
        cx s = 0.0;
        for (int j = 0; j < N; ++j) s += m(i, j) * v[j];
        r[i] = s;
    }
    return r;
}

template <int M, int N>
Matrix<M * N> tensor(const Matrix<M>& x, const Matrix<N>& y) {
    Matrix<M * N> r;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < M; ++j)
            for (int k = 0; k < N; ++k)
                for (int l = 0; l < N; ++l)
                    r(i * N + k, j * N + l) = x(i, j) * y(k, l);
    return r;
}

template <int M, int N>
Vector<M * N> tensor(const Vector<M>& x, const Vector<N>& y) {
    Vector<M * N> r;
    for (int i = 0; i < M; ++i)
        for (int k = 0; k < N; ++k) r[i * N + k] = x[i] * y[k];
    return r;
}

template <int N>
double max_abs(const Matrix<N>& m) {
    double r = 0.0;
    for (const auto& v : m.a) r = std::max(r, std::abs(v));
    return r;
}

template <int N>
double max_abs_diff(const Matrix<N>& x, const Matrix<N>& y) {
    return max_abs(x - y);
}

template <int N>
double hermiticity_defect(const Matrix<N>& m) {
    double r = 0.0;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            r = std::max(r, std::abs(m(i, j) - std::conj(m(j, i))));
    return r;
}

template <int N>
cx trace_product(const Matrix<N>& x, const Matrix<N>& y) {
    cx s = 0.0;
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < N; ++k) s += x(i, k) * y(k, i);
    return s;
}

inline Mat2 pauli_x() {
    Mat2 m;
    m(0, 1) = 1.0;
    m(1, 0) = 1.0;
    return m;
}
inline Mat2 pauli_y() {
    Mat2 m;
    m(0, 1) = cx(0.0, -1.0);
    m(1, 0) = cx(0.0, 1.0);
    return m;
}
inline Mat2 pauli_z() {
    Mat2 m;
    m(0, 0) = 1.0;
    m(1, 1) = -1.0;
    return m;
}

/// n_x sigma_x + n_y sigma_y + n_z sigma_z
inline Mat2 spin(double nx, double ny, double nz) {
    Mat2 m;
    m(0, 0) = nz;
    m(0, 1) = cx(nx, -ny);
    m(1, 0) = cx(nx, ny);
    m(1, 1) = -nz;
    return m;
}

/// Eigendecomposition of a Hermitian matrix: eigenvalues sorted descending,
/// columns of an accumulated unitary as orthonormal eigenvectors.
template <int N>
struct Spectrum {
    std::array<double, N> eigenvalues{};
    std::array<Vector<N>, N> eigenvectors{};

    Matrix<N> reconstruct() const {
        Matrix<N> m;
        for (int k = 0; k < N; ++k)
            m += cx(eigenvalues[k]) * projector(eigenvectors[k]);
        return m;
    }
};

/// Cyclic complex Jacobi diagonalisation. Unconditionally stable at these
/// dimensions; rejects non-Hermitian input with the max asymmetry reported.
template <int N>
Spectrum<N> eig_hermitian(const Matrix<N>& h) {
    const double defect = hermiticity_defect(h);
    if (!(defect <= kHermTol)) {
        std::ostringstream os;
        os << "eig_hermitian: matrix is not Hermitian, max asymmetry = " << defect;
        throw std::invalid_argument(os.str());
    }

    Matrix<N> A;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j)
            A(i, j) = 0.5 * (h(i, j) + std::conj(h(j, i)));
    Matrix<N> V = Matrix<N>::identity();

    const double scale = std::max(max_abs(A), 1e-300);
    const double stop = scale * 1e-15;

    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < N; ++p)
            for (int q = p + 1; q < N; ++q) off = std::max(off, std::abs(A(p, q)));
        if (off <= stop) break;

        for (int p = 0; p < N; ++p) {
            for (int q = p + 1; q < N; ++q) {
                const cx apq = A(p, q);
                const double r = std::abs(apq);
                if (r <= stop * 1e-2) continue;
                const cx omega = apq / r;  // phase of the pivot
                const double tau = (std::real(A(q, q)) - std::real(A(p, p))) / (2.0 * r);
                const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                // R = D * G with D phasing the pivot real and G a real Givens
                // rotation in the (p,q) plane.
                Matrix<N> R = Matrix<N>::identity();
                R(p, p) = c;
                R(p, q) = s;
                R(q, p) = -s * std::conj(omega);
                R(q, q) = c * std::conj(omega);

                A = R.adjoint() * A * R;
                V = V * R;
            }
        }
    }

    std::array<int, N> order{};
    std::iota(order.begin(), order.end(), 0);
    std::array<double, N> diag{};
    for (int i = 0; i < N; ++i) diag[i] = std::real(A(i, i));
    std::sort(order.begin(), order.end(),
              [&](int x, int y) { return diag[x] > diag[y]; });

    Spectrum<N> out;
    for (int k = 0; k < N; ++k) {
        out.eigenvalues[k] = diag[order[k]];
        for (int i = 0; i < N; ++i) out.eigenvectors[k][i] = V(i, order[k]);
    }
    return out;
}

template <int N>
double min_eigenvalue(const Matrix<N>& h) {
    return eig_hermitian(h).eigenvalues[N - 1];
}

/// Sum of |eigenvalue| of a Hermitian matrix, tr|A|.
template <int N>
double trace_norm(const Matrix<N>& h) {
    const auto spec = eig_hermitian(h);
    double s = 0.0;
    for (double l : spec.eigenvalues) s += std::abs(l);
    return s;
}

template <int N>
bool is_psd(const Matrix<N>& h, double tol = 1e-9) {
    return min_eigenvalue(h) >= -tol;
}

template <int N>
double unitarity_defect(const Matrix<N>& u) {
    return max_abs_diff(u.adjoint() * u, Matrix<N>::identity());
}

/// U A U^dag for unitary U.
template <int N>
Matrix<N> conjugate(const Matrix<N>& u, const Matrix<N>& a) {
    const double defect = unitarity_defect(u);
    if (!(defect <= kUnitaryTol)) {
        std::ostringstream os;
        os << "conjugate: matrix U is not unitary, defect = " << defect;
        throw std::invalid_argument(os.str());
    }
    return u * a * u.adjoint();
}

/// Spectral function of a Hermitian matrix, f applied to the eigenvalues.
template <int N, typename F>
Matrix<N> hermitian_function(const Matrix<N>& h, F&& f) {
    const auto spec = eig_hermitian(h);
    Matrix<N> m;
    for (int k = 0; k < N; ++k)
        m += cx(f(spec.eigenvalues[k])) * projector(spec.eigenvectors[k]);
    return m;
}

/// T^{-1/2} for positive definite T.
template <int N>
Matrix<N> inverse_sqrt(const Matrix<N>& t, double floor = 1e-14) {
    return hermitian_function(t, [floor](double l) {
        return 1.0 / std::sqrt(std::max(l, floor));
    });
}

/// Nearest PSD matrix: negative eigenvalues clipped to zero.
template <int N>
Matrix<N> project_psd(const Matrix<N>& h) {
    return hermitian_function(h, [](double l) { return std::max(l, 0.0); });
}

}  // namespace qkr

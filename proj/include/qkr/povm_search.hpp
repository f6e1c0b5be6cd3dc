#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qkr/attacks.hpp"
#include "qkr/entropy.hpp"
#include "qkr/eve_states.hpp"
#include "qkr/linalg.hpp"

namespace qkr {

/// splitmix64: tiny splittable 64-bit generator, identical output on every
/// platform (unlike std::mt19937 distributions).
struct SplitMix64 {
    std::uint64_t state = 0;

    explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// Standard normal via Box-Muller (one fresh pair per two calls).
    double gaussian() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        while (u1 <= 0.0) u1 = uniform();
        const double u2 = uniform();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * M_PI * u2);
        have_spare_ = true;
        return r * std::cos(2.0 * M_PI * u2);
    }

    /// Derived stream for an independent worker.
    SplitMix64 split() { return SplitMix64(next()); }

   private:
    double spare_ = 0.0;
    bool have_spare_ = false;
};

inline constexpr const char* kRngName = "splitmix64";

template <int N>
Matrix<N> random_factor(SplitMix64& rng) {
    Matrix<N> c;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) c(i, j) = cx(rng.gaussian(), rng.gaussian());
    return c;
}

/// Random POVM: Gram factors with complex-Gaussian entries, whitened by the
/// inverse square root of their sum. Deterministic in the seed.
template <int N>
Povm<N> random_povm(int outcomes, SplitMix64& rng) {
    if (outcomes < 2) throw std::invalid_argument("random_povm: outcomes >= 2");
    while (true) {
        std::vector<Matrix<N>> a(outcomes);
        Matrix<N> t;
        for (auto& ax : a) {
            const auto c = random_factor<N>(rng);
            ax = c.adjoint() * c;
            t += ax;
        }
        if (min_eigenvalue(cx(0.5) * (t + t.adjoint())) < 1e-12) continue;  // resample
        const Matrix<N> w = inverse_sqrt(t);
        Povm<N> povm;
        for (const auto& ax : a) povm.elements.push_back(w * ax * w);
        return povm;
    }
}

template <int N>
Povm<N> random_povm(int outcomes, std::uint64_t seed) {
    SplitMix64 rng(seed);
    return random_povm<N>(outcomes, rng);
}

/// A finite symmetry group acting on outcomes: element g maps outcome x to
/// action[g][x] and conjugates operators by unitaries[g].
struct SymmetryGroup {
    std::string name;
    std::vector<Mat4> unitaries;
    std::vector<std::vector<int>> action;

    int order() const { return static_cast<int>(unitaries.size()); }
};

/// Order-3 cyclic group of the 6-state analysis (outcome order is the basis
/// label order 1,2,3).
inline SymmetryGroup six_state_symmetry() {
    const Mat4 s = permutation_s();
    SymmetryGroup g;
    g.name = "S-cyclic";
    g.unitaries = {Mat4::identity(), s, s * s};
    g.action = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    return g;
}

/// Order-4 diagonal sign group of the 8-state analysis (outcome x = basis
/// label b = 2u + w; the action is XOR).
inline SymmetryGroup eight_state_symmetry() {
    SymmetryGroup g;
    g.name = "sigma-z";
    const auto d = eight_state_group();
    g.unitaries = {d[0], d[1], d[2], d[3]};
    g.action.resize(4);
    for (int h = 0; h < 4; ++h)
        for (int x = 0; x < 4; ++x) g.action[h].push_back(x ^ h);
    return g;
}

inline std::optional<SymmetryGroup> scheme_symmetry(const Scheme& s) {
    switch (s.kind) {
        case SchemeKind::SixState: return six_state_symmetry();
        case SchemeKind::EightState: return eight_state_symmetry();
        default: return std::nullopt;
    }
}

/// Group-average a POVM onto the covariant set M_{g(x)} = U_g M_x U_g+, then
/// restore completeness by whitening with the (group-invariant) element sum.
inline Povm4 symmetrize_povm(const Povm4& povm, const SymmetryGroup& group) {
    const int n = povm.outcomes();
    for (const auto& act : group.action)
        if (static_cast<int>(act.size()) != n)
            throw std::invalid_argument("symmetrize_povm: group action does not match outcomes");
    std::vector<Mat4> avg(n);
    for (int x = 0; x < n; ++x) {
        for (int g = 0; g < group.order(); ++g) {
            const Mat4& u = group.unitaries[g];
            avg[x] += u.adjoint() * povm.elements[group.action[g][x]] * u;
        }
        avg[x] = cx(1.0 / group.order()) * avg[x];
    }
    Mat4 t;
    for (const auto& m : avg) t += m;
    const Mat4 w = inverse_sqrt(cx(0.5) * (t + t.adjoint()));
    Povm4 out;
    out.symmetry = group.name;
    for (const auto& m : avg) out.elements.push_back(w * m * w);
    return out;
}

/// Shannon objective H(B|M) for a POVM against a uniform ensemble.
inline double shannon_objective(const Ensemble<4>& ensemble, const Povm4& povm) {
    return shannon_given_povm(ensemble, povm);
}

/// The conjectured minimal H(B|M(zeta_B)) at noise beta.
inline double conjectured_entropy(const Scheme& s, double beta) {
    return std::log2(static_cast<double>(s.size())) -
           k2_leakage(s, Measure::Shannon, beta);
}

struct SearchConfig {
    int outcomes = 2;
    int dimension = 4;
    std::optional<SymmetryGroup> symmetry;
    double step_tolerance = 1e-12;  // stop when an iteration improves less
    int max_iterations = 300;
    double gradient_step = 1e-6;  // central-difference half-width
    std::uint64_t seed = 1;
    int starts = 729;
    double start_spread = 0.3;  // multi-start perturbation scale
};

struct SearchResult {
    Povm4 best;
    double entropy = 0.0;
    int iterations = 0;
    bool converged = false;
    double distance_to_analytic = -1.0;  // max-norm; -1 when no reference given
};

namespace detail {

// Parameter vectors are flattened re/im factor entries. Without symmetry the
// last element is fixed by completeness and clipped back to the PSD cone;
// with symmetry a single head factor generates the whole orbit.
struct Parametrization {
    int outcomes;
    const SymmetryGroup* group;  // null for the free parametrization

    int count() const { return 32 * (group ? 1 : outcomes - 1); }

    static Mat4 factor_from(const double* p) {
        Mat4 c;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                const int k = 2 * (4 * i + j);
                c(i, j) = cx(p[k], p[k + 1]);
            }
        return c;
    }

    Povm4 build(const std::vector<double>& p) const {
        Povm4 povm;
        if (group) {
            const Mat4 c = factor_from(p.data());
            const Mat4 a = c.adjoint() * c;
            Mat4 t;
            for (const auto& u : group->unitaries) t += u.adjoint() * a * u;
            const Mat4 w = inverse_sqrt(cx(0.5) * (t + t.adjoint()));
            const Mat4 head = w * a * w;
            povm.elements.assign(outcomes, Mat4());
            for (int g = 0; g < group->order(); ++g) {
                const Mat4& u = group->unitaries[g];
                povm.elements[group->action[g][0]] = u * head * u.adjoint();
            }
            povm.symmetry = group->name;
            return povm;
        }
        std::vector<Mat4> a(outcomes);
        Mat4 t;
        for (int x = 0; x < outcomes - 1; ++x) {
            const Mat4 c = factor_from(p.data() + 32 * x);
            a[x] = c.adjoint() * c;
            t += a[x];
        }
        a[outcomes - 1] = project_psd(Mat4::identity() - t);  // feasibility clip
        t += a[outcomes - 1];
        const Mat4 w = inverse_sqrt(cx(0.5) * (t + t.adjoint()));
        for (const auto& ax : a) povm.elements.push_back(w * ax * w);
        return povm;
    }
};

/// Fast Shannon objective for a covariant POVM against a covariant ensemble:
/// the conditional rows are outcome permutations of each other and the
/// outcome marginal is uniform, so H(B|M) = h(p(.|b_0)).
inline double symmetric_objective(const Mat4& zeta_ref, const Povm4& povm) {
    std::vector<double> p;
    p.reserve(povm.elements.size());
    for (const auto& m : povm.elements)
        p.push_back(std::max(0.0, std::real(trace_product(m, zeta_ref))));
    return entropy_of(p);
}

}  // namespace detail

/// Local minimisation of H(B|M(zeta_B)) by projected gradient descent on
/// factor parameters (central differences, backtracking line search).
inline SearchResult minimize_shannon(const Ensemble<4>& ensemble,
                                     const SearchConfig& config,
                                     const std::vector<double>& start) {
    const detail::Parametrization par{config.outcomes,
                                      config.symmetry ? &*config.symmetry : nullptr};
    if (static_cast<int>(start.size()) != par.count())
        throw std::invalid_argument("minimize_shannon: start size mismatch");

    auto objective = [&](const std::vector<double>& p) {
        const Povm4 povm = par.build(p);
        if (config.symmetry) return detail::symmetric_objective(ensemble[0], povm);
        return shannon_objective(ensemble, povm);
    };

    std::vector<double> x = start;
    double fx = objective(x);
    std::vector<double> grad(x.size());
    double step = 0.1;
    SearchResult res;
    res.converged = false;

    for (int it = 0; it < config.max_iterations; ++it) {
        res.iterations = it + 1;
        const double h = config.gradient_step;
        double gnorm2 = 0.0;
        for (size_t i = 0; i < x.size(); ++i) {
            const double xi = x[i];
            x[i] = xi + h;
            const double fp = objective(x);
            x[i] = xi - h;
            const double fm = objective(x);
            x[i] = xi;
            grad[i] = (fp - fm) / (2.0 * h);
            gnorm2 += grad[i] * grad[i];
        }
        if (gnorm2 == 0.0) {
            res.converged = true;
            break;
        }
        // backtracking line search along -grad
        bool improved = false;
        step *= 2.0;
        for (int bt = 0; bt < 40; ++bt) {
            std::vector<double> y = x;
            for (size_t i = 0; i < x.size(); ++i) y[i] -= step * grad[i];
            const double fy = objective(y);
            if (fy < fx) {
                improved = true;
                const double gain = fx - fy;
                x = std::move(y);
                fx = fy;
                if (gain < config.step_tolerance) {
                    res.converged = true;
                    it = config.max_iterations;  // done
                }
                break;
            }
            step *= 0.5;
        }
        if (!improved) {
            res.converged = true;
            break;
        }
    }
    res.best = par.build(x);
    res.entropy = shannon_objective(ensemble, res.best);
    return res;
}

/// Multi-start wrapper: a sign grid {-d, 0, +d} over six seeded directions
/// around the maximally-mixed factor, plus extra random starts past 3^6.
inline SearchResult multi_start_search(const Ensemble<4>& ensemble,
                                       const SearchConfig& config) {
    const detail::Parametrization par{config.outcomes,
                                      config.symmetry ? &*config.symmetry : nullptr};
    const int np = par.count();
    SplitMix64 rng(config.seed);

    std::vector<double> base(np, 0.0);
    {
        // identity-like factor blocks give the maximally-mixed start
        const int blocks = config.symmetry ? 1 : config.outcomes - 1;
        for (int bkt = 0; bkt < blocks; ++bkt)
            for (int i = 0; i < 4; ++i) base[32 * bkt + 2 * (4 * i + i)] = 0.5;
    }
    constexpr int kDirs = 6;
    std::vector<std::vector<double>> dirs(kDirs, std::vector<double>(np));
    for (auto& d : dirs)
        for (auto& v : d) v = rng.gaussian();

    SearchResult best;
    best.entropy = std::numeric_limits<double>::infinity();
    for (int s = 0; s < config.starts; ++s) {
        std::vector<double> start = base;
        if (s < 729) {
            int code = s;
            for (int k = 0; k < kDirs; ++k) {
                const int trit = code % 3;
                code /= 3;
                const double c = (trit - 1) * config.start_spread;
                if (c != 0.0)
                    for (int i = 0; i < np; ++i) start[i] += c * dirs[k][i];
            }
        } else {
            for (auto& v : start) v += config.start_spread * rng.gaussian();
        }
        SearchResult r = minimize_shannon(ensemble, config, start);
        if (r.entropy < best.entropy) best = r;
    }
    return best;
}

/// Monte Carlo sampling: returns the lowest Shannon entropy and the highest
/// guessing probability over `samples` random POVMs.
struct McResult {
    double min_entropy_objective = 0.0;
    double max_guessing = 0.0;
};

inline McResult monte_carlo_sample(const Ensemble<4>& ensemble, int outcomes,
                                   long samples, std::uint64_t seed) {
    SplitMix64 rng(seed);
    McResult res;
    res.min_entropy_objective = std::numeric_limits<double>::infinity();
    for (long i = 0; i < samples; ++i) {
        const Povm4 povm = random_povm<4>(outcomes, rng);
        res.min_entropy_objective =
            std::min(res.min_entropy_objective, shannon_objective(ensemble, povm));
        res.max_guessing = std::max(res.max_guessing,
                                    guessing_probability(ensemble, povm));
    }
    return res;
}

/// Max-norm distance between a POVM and the nearest of the analytic K2
/// POVMs (min-entropy and Shannon constructions).
inline double distance_to_analytic(const Povm4& povm, const Scheme& s,
                                   double beta) {
    double best = std::numeric_limits<double>::infinity();
    for (Measure m : {Measure::Shannon, Measure::MinEntropy}) {
        const Povm4 ref = k2_povm(s, m, beta);
        double d = 0.0;
        for (size_t i = 0; i < ref.elements.size(); ++i)
            d = std::max(d, max_abs_diff(povm.elements[i], ref.elements[i]));
        best = std::min(best, d);
    }
    return best;
}

}  // namespace qkr

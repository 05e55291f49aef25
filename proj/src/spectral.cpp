#include "expbasis/spectral.hpp"

#include <cmath>
#include <random>

#include "expbasis/errors.hpp"

namespace expbasis {

namespace {
constexpr double kPi = 3.141592653589793238462643383279502884;
}

double sinc(double s) {
    double x = kPi * s;
    if (std::abs(s) < 1e-8) return 1.0 - x * x / 6.0;
    return std::sin(x) / x;
}

namespace {

// integral of e^{-2 pi i xi t} over [a, b)
std::complex<double> segment_transform(double xi, double a, double b) {
    double len = b - a;
    double phase = -kPi * xi * (a + b);
    return len * sinc(xi * len) * std::polar(1.0, phase);
}

} // namespace

std::complex<double> chi_hat(const DomainSpec& spec, std::span<const double> xi) {
    if (spec.is_one_dimensional()) {
        if (xi.size() != 1) throw ValidationError("frequency dimension mismatch");
        const auto u = spec.as_interval_union();
        std::complex<double> sum = 0.0;
        for (const auto& iv : u.parts())
            sum += segment_transform(xi[0], iv.a.to_double(), iv.b.to_double());
        return sum;
    }
    const auto& box = spec.as_box();
    const int d = box.dim();
    if (static_cast<int>(xi.size()) != d) throw ValidationError("frequency dimension mismatch");
    double dot_t = 0.0;
    for (int j = 0; j < d; ++j) dot_t += xi[j] * box.offset(j);
    double magnitude = box.measure();
    double phase = -2.0 * kPi * dot_t;
    for (int j = 0; j < d; ++j) {
        double eta = 0.0;
        for (int i = 0; i < d; ++i) eta += box.matrix(i, j) * xi[i];  // (A^T xi)_j
        magnitude *= sinc(eta);  // may change sign
        phase -= kPi * eta;
    }
    return magnitude * std::polar(1.0, phase);
}

// ---------------------------------------------------------------- sections

namespace {

GramMatrix build_section(const DomainSpec& spec, int N,
                         std::vector<std::array<int, 4>> indices) {
    GramMatrix G;
    G.dim = spec.dim();
    G.N = N;
    G.indices = std::move(indices);
    const auto n = static_cast<Eigen::Index>(G.indices.size());
    G.entries.resize(n, n);
    const int d = G.dim;
    double xi[4];
    for (Eigen::Index m = 0; m < n; ++m) {
        for (Eigen::Index k = m; k < n; ++k) {
            for (int j = 0; j < d; ++j)
                xi[j] = static_cast<double>(G.indices[m][j] - G.indices[k][j]);
            std::complex<double> v = chi_hat(spec, std::span<const double>(xi, d));
            G.entries(m, k) = v;
            G.entries(k, m) = std::conj(v);
        }
    }
    return G;
}

} // namespace

GramMatrix gram_matrix(const DomainSpec& spec, int N, const Config& cfg) {
    if (N < 1) throw ValidationError("gram_matrix needs N >= 1");
    const int d = spec.dim();
    std::int64_t n = 1;
    for (int j = 0; j < d; ++j) n *= 2 * N + 1;
    if (n > cfg.gram_dense_limit * 2)
        throw ResourceError("gram_matrix: (2N+1)^d exceeds the size budget");

    std::vector<std::array<int, 4>> indices;
    indices.reserve(static_cast<std::size_t>(n));
    std::array<int, 4> idx{0, 0, 0, 0};
    for (int j = 0; j < d; ++j) idx[j] = -N;
    while (true) {
        indices.push_back(idx);
        int axis = d - 1;
        while (axis >= 0 && ++idx[axis] > N) { idx[axis] = -N; --axis; }
        if (axis < 0) break;
    }
    return build_section(spec, N, std::move(indices));
}

GramMatrix gram_section(const DomainSpec& spec, const std::vector<int>& indices,
                        const Config&) {
    if (spec.dim() != 1) throw ValidationError("gram_section takes 1-D indices");
    if (indices.empty()) throw ValidationError("empty index set");
    std::vector<std::array<int, 4>> idx;
    idx.reserve(indices.size());
    int maxabs = 0;
    for (int i : indices) {
        idx.push_back({i, 0, 0, 0});
        maxabs = std::max(maxabs, std::abs(i));
    }
    return build_section(spec, maxabs, std::move(idx));
}

// -------------------------------------------------------------- eigenvalues

namespace {

GramEstimate dense_extremal(const GramMatrix& G) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(G.entries, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success)
        throw ConvergenceError("dense Hermitian eigensolve failed", 0.0, 0.0);
    GramEstimate est;
    est.N = G.N;
    est.lambda_min = solver.eigenvalues().minCoeff();
    est.lambda_max = solver.eigenvalues().maxCoeff();
    return est;
}

// Largest eigenvalue of a Hermitian PSD matrix by power iteration.
double power_lambda_max(const Eigen::MatrixXcd& M, double tol, long cap, double scale) {
    const auto n = M.rows();
    std::mt19937_64 rng(0x5eed5eedULL);
    std::normal_distribution<double> gauss(0.0, 1.0);
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = std::complex<double>(gauss(rng), gauss(rng));
    v.normalize();
    double lambda = 0.0;
    for (long it = 0; it < cap; ++it) {
        Eigen::VectorXcd w = M * v;
        lambda = std::real(v.dot(w));  // Rayleigh quotient
        double residual = (w - lambda * v).norm();
        if (residual <= tol * std::max(1.0, scale)) return lambda;
        double norm = w.norm();
        if (norm == 0.0) return 0.0;  // v in the kernel: M PSD with lambda_max 0
        v = w / norm;
    }
    throw ConvergenceError("power iteration did not converge", lambda, lambda);
}

GramEstimate power_extremal(const GramMatrix& G, const Config& cfg) {
    GramEstimate est;
    est.N = G.N;
    // Gram sections are PSD, so plain power iteration finds lambda_max;
    // iterating the reflected shift lambda_max*I - G then yields lambda_min.
    double scale = G.entries.cwiseAbs().rowwise().sum().maxCoeff();
    est.lambda_max = power_lambda_max(G.entries, cfg.power_tol, cfg.power_iter_cap, scale);
    Eigen::MatrixXcd shifted =
        Eigen::MatrixXcd(est.lambda_max * Eigen::MatrixXcd::Identity(G.size(), G.size()) - G.entries);
    double mu;
    try {
        mu = power_lambda_max(shifted, cfg.power_tol, cfg.power_iter_cap, scale);
    } catch (const ConvergenceError& e) {
        throw ConvergenceError(e.what(), est.lambda_max - e.partial_lambda_max, est.lambda_max);
    }
    est.lambda_min = est.lambda_max - mu;
    return est;
}

} // namespace

GramEstimate extremal_eigenvalues(const GramMatrix& G, const Config& cfg) {
    if (G.size() <= cfg.gram_dense_limit) return dense_extremal(G);
    return power_extremal(G, cfg);
}

GramEstimate extremal_eigenvalues_power(const GramMatrix& G, const Config& cfg) {
    return power_extremal(G, cfg);
}

// -------------------------------------------------------------- bracket sum

BracketSum bracket_sum(const DomainSpec& spec, std::span<const double> y, int M,
                       const Config&) {
    if (M < 1) throw ValidationError("bracket_sum needs M >= 1");
    const int d = spec.dim();
    if (static_cast<int>(y.size()) != d) throw ValidationError("point dimension mismatch");
    std::int64_t terms = 1;
    for (int j = 0; j < d; ++j) {
        terms *= 2 * static_cast<std::int64_t>(M) + 1;
        if (terms > 50'000'000) throw ResourceError("bracket_sum: (2M+1)^d too large");
    }

    double sum = 0.0;
    int m[4];
    for (int j = 0; j < d; ++j) m[j] = -M;
    double xi[4];
    while (true) {
        for (int j = 0; j < d; ++j) xi[j] = y[j] + m[j];
        sum += std::norm(chi_hat(spec, std::span<const double>(xi, d)));
        int axis = d - 1;
        while (axis >= 0 && ++m[axis] > M) { m[axis] = -M; --axis; }
        if (axis < 0) break;
    }

    BracketSum out;
    out.value = sum;
    if (spec.is_one_dimensional()) {
        double k = static_cast<double>(spec.as_interval_union().parts().size());
        out.tail_bound = (k / kPi) * (k / kPi) * 2.0 / std::max(1, M - 1);
    }
    return out;
}

// --------------------------------------------------------- energy identities

namespace {

// 8-point Gauss-Legendre on [-1, 1]
constexpr double kGlNode[4] = {0.1834346424956498, 0.5255324099163290,
                               0.7966664774136267, 0.9602898564975363};
constexpr double kGlWeight[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};

std::complex<double> eval_trig_poly(int first_index, const std::vector<std::complex<double>>& a,
                                    double x) {
    // e^{2 pi i n x}, stepped by a constant rotation across the support
    std::complex<double> rot = std::polar(1.0, 2.0 * kPi * x);
    std::complex<double> e = std::polar(1.0, 2.0 * kPi * first_index * x);
    std::complex<double> s = 0.0;
    for (const auto& c : a) {
        s += c * e;
        e *= rot;
    }
    return s;
}

// kernel(l) = sum_i weight_i * integral over piece i of e^{-2 pi i l t}
std::vector<std::complex<double>> piecewise_kernel(const CoveringProfile1D& profile,
                                                   const std::vector<double>& weights,
                                                   int max_lag) {
    std::vector<std::complex<double>> kernel(static_cast<std::size_t>(max_lag) + 1);
    for (int l = 0; l <= max_lag; ++l) {
        std::complex<double> v = 0.0;
        for (std::size_t i = 0; i < profile.pieces(); ++i) {
            if (weights[i] == 0.0) continue;
            v += weights[i] * segment_transform(static_cast<double>(l),
                                                profile.breakpoints[i].to_double(),
                                                profile.breakpoints[i + 1].to_double());
        }
        kernel[static_cast<std::size_t>(l)] = v;
    }
    return kernel;
}

// Hermitian form sum conj(a_m) a_n kernel(m - n); kernel(-l) = conj(kernel(l)).
double hermitian_form(const std::vector<std::complex<double>>& a,
                      const std::vector<std::complex<double>>& kernel) {
    const auto K = a.size();
    std::complex<double> acc = 0.0;
    for (std::size_t m = 0; m < K; ++m)
        for (std::size_t n = 0; n < K; ++n) {
            long lag = static_cast<long>(m) - static_cast<long>(n);
            std::complex<double> k =
                lag >= 0 ? kernel[static_cast<std::size_t>(lag)]
                         : std::conj(kernel[static_cast<std::size_t>(-lag)]);
            acc += std::conj(a[m]) * a[n] * k;
        }
    return acc.real();
}

} // namespace

EnergyReport energy_identities(const DomainSpec& spec, int first_index,
                               const std::vector<std::complex<double>>& a,
                               long quadrature_n, const Config&) {
    if (!spec.is_one_dimensional())
        throw ValidationError("energy_identities supports 1-D domains only");
    if (a.empty()) throw ValidationError("empty coefficient vector");
    if (quadrature_n < 8) throw ValidationError("quadrature_n too small");

    const auto u = spec.as_interval_union();
    const auto profile = fold_1d(u);
    const int K = static_cast<int>(a.size());
    const int degree = 2 * (std::max(std::abs(first_index), std::abs(first_index + K - 1)) + 1);

    // q1: Gram kernel from chi_hat of the intervals
    std::vector<std::complex<double>> gram_kernel(static_cast<std::size_t>(K));
    for (int l = 0; l < K; ++l) {
        double xi = static_cast<double>(l);
        gram_kernel[static_cast<std::size_t>(l)] = chi_hat(spec, std::span<const double>(&xi, 1));
    }
    // q3: kernel from the Fourier coefficients of Phi^2 (exact fold route)
    std::vector<double> w1(profile.pieces()), w2(profile.pieces());
    for (std::size_t i = 0; i < profile.pieces(); ++i) {
        w1[i] = static_cast<double>(profile.values[i]);
        w2[i] = w1[i] * w1[i];
    }
    auto phi2_kernel = piecewise_kernel(profile, w2, K - 1);

    EnergyReport rep;
    rep.q1 = hermitian_form(a, gram_kernel);
    rep.q3 = hermitian_form(a, phi2_kernel);

    // q2, q4: composite Gauss-Legendre per constant piece of the profile,
    // panel count proportional to quadrature_n and to the polynomial degree
    double q2 = 0.0, q4 = 0.0;
    for (std::size_t i = 0; i < profile.pieces(); ++i) {
        if (profile.values[i] == 0) continue;
        double lo = profile.breakpoints[i].to_double();
        double hi = profile.breakpoints[i + 1].to_double();
        double len = hi - lo;
        long panels = std::max<long>({1, std::lround(len * static_cast<double>(quadrature_n) / 8.0),
                                      std::lround(len * degree)});
        double h = len / static_cast<double>(panels);
        double piece = 0.0;
        for (long p = 0; p < panels; ++p) {
            double c = lo + (static_cast<double>(p) + 0.5) * h;
            for (int g = 0; g < 4; ++g) {
                double dx = 0.5 * h * kGlNode[g];
                piece += kGlWeight[g] *
                         (std::norm(eval_trig_poly(first_index, a, c + dx)) +
                          std::norm(eval_trig_poly(first_index, a, c - dx)));
            }
        }
        piece *= 0.5 * h;
        q2 += piece * w1[i];
        q4 += piece * w2[i];
    }
    rep.q2 = q2;
    rep.q4 = q4;
    rep.d12 = std::abs(rep.q1 - rep.q2);
    rep.d34 = std::abs(rep.q3 - rep.q4);
    return rep;
}

// ---------------------------------------------------------------- haase gap

HaaseGap haase_gap(const GramMatrix& G, const Eigen::VectorXcd& a, double lambda_max) {
    if (a.size() != G.size()) throw ValidationError("coefficient vector size mismatch");
    if (std::abs(a.norm() - 1.0) > 1e-9) throw ValidationError("haase_gap needs a unit vector");
    Eigen::VectorXcd Ga = G.entries * a;
    HaaseGap gap;
    gap.mid = std::real(a.dot(Ga));
    gap.rhs = lambda_max;
    gap.lhs = lambda_max > 0.0 ? Ga.squaredNorm() / lambda_max : 0.0;
    return gap;
}

HaaseGap haase_gap(const GramMatrix& G, const Eigen::VectorXcd& a, const Config& cfg) {
    return haase_gap(G, a, extremal_eigenvalues(G, cfg).lambda_max);
}

} // namespace expbasis

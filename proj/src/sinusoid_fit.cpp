#include "mdf/numerics.hpp"

#include <Eigen/Dense>

#include <complex>
#include <numbers>

namespace mdf::numerics {

namespace {

// Starting frequencies from Prony linear prediction: a real sum of k
// sinusoids obeys a 2k-term linear recurrence whose characteristic roots
// sit on the unit circle at exp(+-i w dt).
std::vector<double> prony_frequencies(std::span<const double> y, double dt, int k)
{
    const int order = 2 * k;
    const Eigen::Index n = static_cast<Eigen::Index>(y.size());
    const Eigen::Index rows = n - order;
    Eigen::MatrixXd a(rows, order);
    Eigen::VectorXd b(rows);
    for (Eigen::Index i = 0; i < rows; ++i) {
        for (int j = 0; j < order; ++j) a(i, j) = y[static_cast<std::size_t>(i + order - 1 - j)];
        b(i) = y[static_cast<std::size_t>(i + order)];
    }
    Eigen::VectorXd c = a.colPivHouseholderQr().solve(b);

    // Companion matrix of z^order - c0 z^(order-1) - ... - c_{order-1}.
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(order, order);
    for (int j = 0; j < order; ++j) companion(0, j) = c(j);
    for (int j = 1; j < order; ++j) companion(j, j - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion, false);

    std::vector<double> freqs;
    for (int j = 0; j < order; ++j) {
        std::complex<double> z = es.eigenvalues()(j);
        if (z.imag() > 0.0) freqs.push_back(std::arg(z) / dt);
    }
    // Degenerate roots (real axis) leave fewer than k conjugate pairs; pad
    // with a harmless spread so Gauss-Newton still has k unknowns.
    while (static_cast<int>(freqs.size()) < k) freqs.push_back((freqs.empty() ? 1.0 : freqs.back()) * 1.5);
    std::sort(freqs.begin(), freqs.end(), std::greater<>());
    freqs.resize(static_cast<std::size_t>(k));
    return freqs;
}

struct Projection {
    Eigen::VectorXd coeffs; // a_j (cos), b_j (sin) interleaved
    Eigen::VectorXd residual;
    double condition = 0.0;
};

Projection project(std::span<const double> t, std::span<const double> y, const std::vector<double>& w)
{
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    const Eigen::Index k = static_cast<Eigen::Index>(w.size());
    Eigen::MatrixXd basis(n, 2 * k);
    Eigen::VectorXd rhs(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        double ti = t[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < k; ++j) {
            basis(i, 2 * j) = std::cos(w[static_cast<std::size_t>(j)] * ti);
            basis(i, 2 * j + 1) = std::sin(w[static_cast<std::size_t>(j)] * ti);
        }
        rhs(i) = y[static_cast<std::size_t>(i)];
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(basis, Eigen::ComputeThinU | Eigen::ComputeThinV);
    Projection p;
    p.coeffs = svd.solve(rhs);
    p.residual = rhs - basis * p.coeffs;
    const auto& sv = svd.singularValues();
    p.condition = sv(sv.size() - 1) > 0.0 ? sv(0) / sv(sv.size() - 1) : std::numeric_limits<double>::infinity();
    return p;
}

} // namespace

SinusoidFit sinusoid_fit(std::span<const double> t, std::span<const double> y, int k)
{
    if (k < 1) throw DomainError("sinusoid_fit: k must be >= 1");
    if (t.size() != y.size()) throw DomainError("sinusoid_fit: sample arrays differ in length");
    if (t.size() < static_cast<std::size_t>(8 * k)) throw DomainError("sinusoid_fit: too few samples");
    const double dt = t[1] - t[0];
    if (!(dt > 0.0)) throw DomainError("sinusoid_fit: sample times must increase");

    std::vector<double> w = prony_frequencies(y, dt, k);
    constexpr double max_condition = 1e12;

    SinusoidFit fit;
    Projection p = project(t, y, w);
    double rss = p.residual.squaredNorm();
    double lambda = 1e-3;
    const Eigen::Index n = static_cast<Eigen::Index>(t.size());
    for (int iter = 0; iter < 100; ++iter) {
        fit.iterations = iter + 1;
        // Jacobian of the model with respect to all 3k parameters, ordered
        // (w_j, a_j, b_j); the linear columns keep the frequency step honest.
        Eigen::MatrixXd jac(n, 3 * k);
        for (Eigen::Index i = 0; i < n; ++i) {
            double ti = t[static_cast<std::size_t>(i)];
            for (int j = 0; j < k; ++j) {
                double wj = w[static_cast<std::size_t>(j)];
                double a = p.coeffs(2 * j), b = p.coeffs(2 * j + 1);
                double c = std::cos(wj * ti), s = std::sin(wj * ti);
                jac(i, 3 * j) = ti * (-a * s + b * c);
                jac(i, 3 * j + 1) = c;
                jac(i, 3 * j + 2) = s;
            }
        }
        Eigen::MatrixXd jtj = jac.transpose() * jac;
        Eigen::VectorXd jtr = jac.transpose() * p.residual;
        bool improved = false;
        bool converged = false;
        for (int attempt = 0; attempt < 30; ++attempt) {
            Eigen::MatrixXd damped = jtj;
            damped.diagonal() *= (1.0 + lambda);
            Eigen::VectorXd step = damped.ldlt().solve(jtr);
            std::vector<double> trial = w;
            for (int j = 0; j < k; ++j) trial[static_cast<std::size_t>(j)] += step(3 * j);
            Projection q = project(t, y, trial);
            double trial_rss = q.residual.squaredNorm();
            if (trial_rss <= rss) {
                double max_dw = 0.0;
                for (int j = 0; j < k; ++j) max_dw = std::max(max_dw, std::abs(step(3 * j)));
                w = trial;
                p = q;
                bool done = (rss - trial_rss) <= 1e-15 * rss || max_dw < 1e-14;
                rss = trial_rss;
                lambda = std::max(lambda * 0.1, 1e-12);
                improved = true;
                converged = done;
                break;
            }
            lambda *= 10.0;
        }
        if (!improved || converged || rss == 0.0) break;
    }

    fit.condition = p.condition;
    if (!(p.condition < max_condition)) {
        throw NumericError("sinusoid_fit: ill-conditioned design matrix (condition " + std::to_string(p.condition) + ")");
    }
    fit.rms_residual = std::sqrt(rss / static_cast<double>(n));
    for (int j = 0; j < k; ++j) {
        double a = p.coeffs(2 * j), b = p.coeffs(2 * j + 1);
        // a cos + b sin = A cos(w t + phase) with A cos(phase) = a, -A sin(phase) = b
        double wj = w[static_cast<std::size_t>(j)];
        double amp = std::hypot(a, b);
        double phase = std::atan2(-b, a);
        if (wj < 0.0) {
            wj = -wj;
            phase = -phase;
        }
        fit.components.push_back({wj, amp, phase});
    }
    std::sort(fit.components.begin(), fit.components.end(),
              [](const auto& l, const auto& r) { return l.frequency > r.frequency; });
    return fit;
}

} // namespace mdf::numerics

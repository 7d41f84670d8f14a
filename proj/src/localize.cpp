#include "so3fit/localize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <string>

#include "so3fit/errors.hpp"
#include "so3fit/parallel.hpp"

namespace so3fit {

namespace {

constexpr int kChunkGrid = 64; // fixed chunk grid for deterministic reductions

/// Real basis of Pi_L: D^l_{0,0} plus (Re, Im) of one representative of each
/// conjugate pair {(iota, nu), (-iota, -nu)}.  Spans the same space as the
/// complex Wigner functions, so reproduction in this basis is reproduction of
/// every element of Pi_L.
struct RealBasisEntry {
    int l, k, m;
    bool imaginary; // take Im instead of Re
};

std::vector<RealBasisEntry> real_basis_entries(int L)
{
    std::vector<RealBasisEntry> entries;
    entries.reserve(polynomial_dimension(L));
    for(int l = 0; l <= L; ++l) {
        entries.push_back({l, 0, 0, false});
        for(int k = -l; k <= l; ++k) {
            for(int m = -l; m <= l; ++m) {
                if(k > 0 || (k == 0 && m > 0)) {
                    entries.push_back({l, k, m, false});
                    entries.push_back({l, k, m, true});
                }
            }
        }
    }
    return entries;
}

Eigen::VectorXd evaluate_real_basis(const std::vector<RealBasisEntry>& entries,
    WignerEvaluator& eval, const Rotation& x)
{
    eval.evaluate(x);
    Eigen::VectorXd v(entries.size());
    for(std::size_t r = 0; r < entries.size(); ++r) {
        const std::complex<double> c = eval.coef(entries[r].l, entries[r].k, entries[r].m);
        v[r] = entries[r].imaginary ? c.imag() : c.real();
    }
    return v;
}

} // namespace

std::vector<int> local_centers(const PointSet& centers, const Rotation& alpha, double rho)
{
    if(!(rho > 0) || rho > M_PI + 1e-12)
        throw InvalidArgumentError("local_centers: radius must lie in (0, pi]");
    const double dot_cut = std::cos(0.5 * std::min(rho, M_PI));
    std::vector<int> idx;
    const auto& pts = centers.points();
    for(std::size_t j = 0; j < pts.size(); ++j) {
        const double d = std::abs(
            pts[j].quaternion().coeffs().dot(alpha.quaternion().coeffs()));
        if(d >= dot_cut)
            idx.push_back(static_cast<int>(j));
    }
    if(idx.empty())
        throw DensityError("local_centers: no centers within radius " + std::to_string(rho));
    return idx;
}

double ckc_radius(int precision, double fill_distance)
{
    const double rho = kCkcRadiusConstant * precision * precision * fill_distance;
    return std::min(rho, M_PI);
}

CoefficientKernel::CoefficientKernel(PointSet centers, int precision, double rho)
    : centers_(std::move(centers)), precision_(precision), rho_(rho)
{
    if(precision < 0)
        throw InvalidArgumentError("CoefficientKernel: precision must be nonnegative");
    if(!(rho > 0) || rho > M_PI + 1e-12)
        throw InvalidArgumentError("CoefficientKernel: radius must lie in (0, pi]");
    const auto entries = real_basis_entries(precision);
    basis_at_centers_.resize(entries.size(), centers_.size());
    WignerEvaluator eval(precision);
    for(std::size_t j = 0; j < centers_.size(); ++j)
        basis_at_centers_.col(j) = evaluate_real_basis(entries, eval, centers_[j]);
}

Eigen::VectorXd CoefficientKernel::real_basis_at(const Rotation& alpha) const
{
    const auto entries = real_basis_entries(precision_);
    WignerEvaluator eval(precision_);
    return evaluate_real_basis(entries, eval, alpha);
}

SparseWeights CoefficientKernel::weights(const Rotation& alpha) const
{
    SolveCache cache;
    return weights(alpha, cache);
}

SparseWeights CoefficientKernel::weights(const Rotation& alpha, SolveCache& cache) const
{
    std::vector<int> idx = local_centers(centers_, alpha, rho_);
    const int P = static_cast<int>(basis_at_centers_.rows());
    const int n = static_cast<int>(idx.size());
    if(n < P)
        throw DensityError("coefficient kernel: only " + std::to_string(n) +
            " centers in the ball but precision needs " + std::to_string(P) +
            "; increase rho");

    if(!cache.valid || cache.indices != idx) {
        Eigen::MatrixXd Bt(n, P); // B^T, the transposed local system
        for(int j = 0; j < n; ++j)
            Bt.row(j) = basis_at_centers_.col(idx[j]).transpose();
        cache.qr.compute(Bt);
        cache.indices = idx;
        cache.valid = true;
    }
    const Eigen::MatrixXd& QR = cache.qr.matrixQR();
    double dmax = 0;
    for(int r = 0; r < P; ++r)
        dmax = std::max(dmax, std::abs(QR(r, r)));
    for(int r = 0; r < P; ++r) {
        if(std::abs(QR(r, r)) < 1e-10 * dmax)
            throw DensityError("coefficient kernel: local system rank-deficient; increase rho");
    }

    // least-norm solution of B a = d:  B = R^T Q^T, solve R^T z = d, a = Q z
    const Eigen::VectorXd d = real_basis_at(alpha);
    Eigen::VectorXd z = QR.topRows(P).triangularView<Eigen::Upper>().transpose().solve(d);
    Eigen::VectorXd zfull = Eigen::VectorXd::Zero(n);
    zfull.head(P) = z;
    Eigen::VectorXd a = cache.qr.householderQ() * zfull;

    return {std::move(idx), std::move(a)};
}

SparseWeights coefficient_vector(const PointSet& centers, const Rotation& alpha, int precision,
    double rho)
{
    return CoefficientKernel(centers, precision, rho).weights(alpha);
}

CkcReport verify_ckc(const CoefficientKernel& ck, int probe_count, std::uint64_t seed)
{
    CkcReport report;
    report.probe_count = probe_count;
    report.seed = seed;
    report.local_counts.reserve(probe_count);

    HaarSampler sampler(seed);
    const int L = ck.precision();
    WignerEvaluator eval_alpha(L), eval_xi(L);
    CoefficientKernel::SolveCache cache;
    for(int t = 0; t < probe_count; ++t) {
        const Rotation alpha = sampler.sample();
        SparseWeights sw;
        try {
            sw = ck.weights(alpha, cache);
        } catch(const DensityError&) {
            ++report.density_failures;
            report.local_counts.push_back(0);
            continue;
        }
        report.local_counts.push_back(static_cast<int>(sw.indices.size()));

        // CKC1: support
        for(std::size_t i = 0; i < sw.indices.size(); ++i) {
            if(sw.weights[i] != 0) {
                const double excess =
                    distance(ck.centers()[sw.indices[i]], alpha) - ck.radius();
                report.max_support_violation = std::max(report.max_support_violation,
                    std::max(0.0, excess));
            }
        }

        // CKC2: precision against the complex Wigner functions
        std::vector<std::complex<double>> acc(band_offset(L + 1), {0.0, 0.0});
        for(std::size_t i = 0; i < sw.indices.size(); ++i) {
            eval_xi.evaluate(ck.centers()[sw.indices[i]]);
            for(std::size_t r = 0; r < acc.size(); ++r)
                acc[r] += sw.weights[i] * eval_xi.table()[r];
        }
        eval_alpha.evaluate(alpha);
        for(std::size_t r = 0; r < acc.size(); ++r) {
            report.max_precision_residual = std::max(report.max_precision_residual,
                std::abs(acc[r] - eval_alpha.table()[r]));
        }

        // CKC3: stability
        report.stability_constant = std::max(report.stability_constant, sw.l1_norm());
    }
    return report;
}

double error_kernel_eval(const KernelOrder& order, const CoefficientKernel& ck,
    const Rotation& x, const Rotation& alpha)
{
    const SparseWeights sw = ck.weights(alpha);
    double acc = kernel_eval(order, x, alpha);
    for(std::size_t i = 0; i < sw.indices.size(); ++i)
        acc -= sw.weights[i] * kernel_eval(order, x, ck.centers()[sw.indices[i]]);
    return std::abs(acc);
}

SplineModel build_approximant(const FourierCoefficients& f_coeffs, const PointSet& centers,
    const KernelOrder& order, int precision, double rho, const QuadratureRule& rule,
    BuildStats* stats)
{
    const FourierCoefficients g = apply_lm(order, f_coeffs);
    const CoefficientKernel ck(centers, precision, rho);
    const std::size_t n_nodes = rule.size();
    const int M = static_cast<int>(centers.size());

    std::vector<Eigen::VectorXcd> chunk_acc(kChunkGrid);
    std::vector<double> chunk_wmax(kChunkGrid, 0.0), chunk_gl1(kChunkGrid, 0.0);
    std::vector<std::exception_ptr> chunk_error(kChunkGrid);

    parallel_chunks(n_nodes, kChunkGrid, [&](int c, std::size_t begin, std::size_t end) {
        try {
            Eigen::VectorXcd acc = Eigen::VectorXcd::Zero(M);
            CoefficientKernel::SolveCache cache;
            for(std::size_t j = begin; j < end; ++j) {
                const QuadratureNode& node = rule.nodes()[j];
                const std::complex<double> gw = node.weight *
                    fourier_synthesize(g, node.rotation);
                const SparseWeights sw = ck.weights(node.rotation, cache);
                for(std::size_t i = 0; i < sw.indices.size(); ++i)
                    acc[sw.indices[i]] += gw * sw.weights[i];
                chunk_wmax[c] = std::max(chunk_wmax[c], sw.l1_norm());
                chunk_gl1[c] += std::abs(gw);
            }
            chunk_acc[c] = std::move(acc);
        } catch(...) {
            chunk_error[c] = std::current_exception();
        }
    });

    for(int c = 0; c < kChunkGrid; ++c)
        if(chunk_error[c])
            std::rethrow_exception(chunk_error[c]);

    Eigen::VectorXcd A = Eigen::VectorXcd::Zero(M);
    double wmax = 0, gl1 = 0;
    for(int c = 0; c < kChunkGrid; ++c) {
        if(chunk_acc[c].size() == M)
            A += chunk_acc[c];
        wmax = std::max(wmax, chunk_wmax[c]);
        gl1 += chunk_gl1[c];
    }

    if(stats) {
        stats->alpha_l1 = A.cwiseAbs().sum();
        stats->weights_l1_max = wmax;
        stats->lmf_l1 = gl1;
    }

    const int P = polynomial_dimension(order.cpd_order());
    return {order, centers.points(), std::move(A), Eigen::VectorXcd::Zero(P)};
}

namespace {

/// Least-squares slope of log(err) against log(rho).
double fitted_order(const std::vector<ConvergenceRow>& rows, bool l2)
{
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for(const ConvergenceRow& row : rows) {
        const double err = l2 ? row.l2_error : row.sup_error;
        if(!(err > 0))
            continue;
        const double x = std::log(row.rho), y = std::log(err);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if(n < 2)
        return 0;
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

} // namespace

ConvergenceTable convergence_study(const KernelOrder& order, int precision,
    const FourierCoefficients& f_coeffs, const std::vector<PointSet>& levels,
    const QuadratureRule& rule, int probe_count, std::uint64_t seed,
    std::vector<BuildStats>* stats)
{
    if(levels.size() < 3)
        throw InvalidArgumentError("convergence_study: need at least 3 levels");
    for(std::size_t i = 0; i + 1 < levels.size(); ++i) {
        if(!(levels[i + 1].fill_distance() < levels[i].fill_distance()))
            throw InvalidArgumentError("convergence_study: fill distances must decrease");
    }

    // fixed probe set and target values, shared across levels
    HaarSampler sampler(seed);
    std::vector<Rotation> probes;
    probes.reserve(probe_count);
    for(int t = 0; t < probe_count; ++t)
        probes.push_back(sampler.sample());
    std::vector<std::complex<double>> f_probe(probe_count);
    for(int t = 0; t < probe_count; ++t)
        f_probe[t] = fourier_synthesize(f_coeffs, probes[t]);
    std::vector<std::complex<double>> f_node(rule.size());
    for(std::size_t j = 0; j < rule.size(); ++j)
        f_node[j] = fourier_synthesize(f_coeffs, rule.nodes()[j].rotation);

    if(stats)
        stats->clear();
    ConvergenceTable table;
    for(const PointSet& level : levels) {
        const double rho = ckc_radius(precision, level.fill_distance());
        BuildStats level_stats;
        const SplineModel model =
            build_approximant(f_coeffs, level, order, precision, rho, rule, &level_stats);
        if(stats)
            stats->push_back(level_stats);

        auto model_at = [&](const Rotation& x) {
            std::complex<double> acc{0.0, 0.0};
            for(std::size_t j = 0; j < model.centers.size(); ++j)
                acc += model.alpha[j] * kernel_eval(order, x, model.centers[j]);
            return acc;
        };

        std::vector<double> chunk_sup(kChunkGrid, 0.0);
        parallel_chunks(probes.size(), kChunkGrid, [&](int c, std::size_t b, std::size_t e) {
            for(std::size_t t = b; t < e; ++t)
                chunk_sup[c] = std::max(chunk_sup[c], std::abs(model_at(probes[t]) - f_probe[t]));
        });
        const double sup_err = *std::max_element(chunk_sup.begin(), chunk_sup.end());

        std::vector<double> chunk_l2(kChunkGrid, 0.0);
        parallel_chunks(rule.size(), kChunkGrid, [&](int c, std::size_t b, std::size_t e) {
            for(std::size_t j = b; j < e; ++j) {
                chunk_l2[c] += rule.nodes()[j].weight *
                    std::norm(model_at(rule.nodes()[j].rotation) - f_node[j]);
            }
        });
        double l2_err = 0;
        for(int c = 0; c < kChunkGrid; ++c)
            l2_err += chunk_l2[c];
        l2_err = std::sqrt(l2_err);

        table.rows.push_back({static_cast<int>(level.size()), level.fill_distance(), rho,
            sup_err, l2_err});
    }

    std::sort(table.rows.begin(), table.rows.end(),
        [](const ConvergenceRow& a, const ConvergenceRow& b) { return a.h > b.h; });
    table.sup_order = fitted_order(table.rows, false);
    table.l2_order = fitted_order(table.rows, true);
    return table;
}

} // namespace so3fit

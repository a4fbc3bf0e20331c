#include "qqpovm/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <random>

#include "qqpovm/errors.hpp"
#include "qqpovm/qq.hpp"

namespace qqpovm {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform_unit(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

CellCounts sample_cells(std::span<const double, 4> probabilities, std::uint64_t n, std::uint64_t seed) {
    std::array<double, 4> cdf{};
    double acc = 0.0;
    for (std::size_t i = 0; i < 4; ++i) {
        acc += std::max(probabilities[i], 0.0);
        cdf[i] = acc;
    }
    if (!(acc > 0.0)) throw std::invalid_argument("sample_cells: distribution has no mass");
    for (auto& c : cdf) c /= acc;
    cdf[3] = 1.0;

    std::mt19937_64 engine(seed);
    CellCounts counts{};
    for (std::uint64_t i = 0; i < n; ++i) {
        const double u = uniform_unit(engine());
        std::size_t cell = 0;
        while (cell < 3 && u >= cdf[cell]) ++cell;
        ++counts[cell];
    }
    return counts;
}

EmpiricalReport simulate(const ExperimentConfig& config) {
    if (config.convention != Convention::Sqrt) {
        throw UnsupportedConventionError(
            "sampling requires the sqrt convention: literal joint probabilities do not sum to 1 for non-projective "
            "effects, so no respondent distribution exists");
    }
    if (config.n_per_order == 0) throw std::invalid_argument("n_per_order must be >= 1");

    const auto qq = qq_statistic(config.state, config.a, config.b, config.convention);
    const std::array<const OutcomeTable*, 2> tables{&qq.a_first, &qq.b_first};

    EmpiricalReport report;
    report.n_per_order = config.n_per_order;
    report.analytic_qq = qq.statistic;

    std::array<std::future<CellCounts>, 2> jobs;
    for (std::size_t o = 0; o < 2; ++o) {
        const auto& p = tables[o]->p;
        const std::array<double, 4> cells{p[0][0], p[0][1], p[1][0], p[1][1]};
        jobs[o] = std::async(std::launch::async, [cells, n = config.n_per_order, s = derive_seed(config.seed, o)] {
            return sample_cells(cells, n, s);
        });
    }
    for (std::size_t o = 0; o < 2; ++o) report.counts[o] = jobs[o].get();

    const double n = static_cast<double>(config.n_per_order);
    // Off-diagonal cells (yes-no, no-yes) contribute with sign + for A first, - for B first.
    const double q_a = static_cast<double>(report.counts[0][1] + report.counts[0][2]) / n;
    const double q_b = static_cast<double>(report.counts[1][1] + report.counts[1][2]) / n;
    report.empirical_qq = q_a - q_b;
    report.standard_error = std::sqrt(q_a * (1.0 - q_a) / n + q_b * (1.0 - q_b) / n);
    return report;
}

std::vector<SweepRow> convergence_sweep(const ExperimentConfig& config, std::span<const std::uint64_t> sizes) {
    if (sizes.empty()) throw std::invalid_argument("convergence_sweep: sizes must not be empty");
    if (!std::is_sorted(sizes.begin(), sizes.end(), std::less_equal<>{}) || sizes.front() == 0) {
        throw std::invalid_argument("convergence_sweep: sizes must be positive and strictly ascending");
    }
    std::vector<SweepRow> rows;
    rows.reserve(sizes.size());
    for (std::size_t i = 0; i < sizes.size(); ++i) {
        ExperimentConfig run = config;
        run.n_per_order = sizes[i];
        run.seed = derive_seed(config.seed, 1000 + i);
        const auto r = simulate(run);
        rows.push_back(SweepRow{.n = sizes[i],
                                .abs_error = std::abs(r.empirical_qq - r.analytic_qq),
                                .standard_error = r.standard_error,
                                .empirical_qq = r.empirical_qq,
                                .analytic_qq = r.analytic_qq});
    }
    return rows;
}

}  // namespace qqpovm

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qwalk/graph.hpp"
#include "qwalk/hypergeometric.hpp"
#include "qwalk/ingest.hpp"

namespace qwalk {

// Mean distance travelled mu_s(t) = sum_v d_sv P_sv(t) sampled on a time
// grid. Nodes unreachable from the source are excluded from the sum; the
// probability mass they carry is reported alongside each value.
struct MdtCurve {
    std::vector<double> times;
    std::vector<double> values;
    std::vector<double> excluded_mass;
    std::string context;
    double alpha = 0.0;
};

// Single-source curve. seeds_for_h selects where alpha lands on the
// diagonal; the single-seed ablation passes {source} itself, the disease
// experiment passes the full seed set.
MdtCurve mean_distance_travelled(const Graph& g, int source, const SeedSet& seeds_for_h,
                                 double alpha, std::span<const double> times, double tol = 1e-9);

struct DegreeRange {
    int lo = 0;
    int hi = 0;
};

// Per (degree range, alpha): average single-seed curve over `samples` nodes
// drawn from the range. Ranges with no qualifying nodes are skipped. When a
// range holds at most `samples` nodes, every node is used once.
std::vector<MdtCurve> degree_stratified_mdt(const Graph& g, std::span<const DegreeRange> ranges,
                                            std::span<const double> alphas,
                                            std::span<const double> times, int samples,
                                            std::uint64_t rng_seed, double tol = 1e-9);

// Disease curve: per-seed MDT under the full-seed Hamiltonian, averaged over
// the seeds.
MdtCurve disease_mdt(const Graph& g, const SeedSet& seeds, double alpha,
                     std::span<const double> times, double tol = 1e-9);

// Upper-tail hypergeometric enrichment: probability that a uniform
// selection overlaps the module at least as much as observed.
double enrichment_pvalue(std::int64_t universe, std::int64_t module_size,
                         std::int64_t selection_size, std::int64_t overlap);

// 50 uniform points on [0, 1], the ablation's default grid.
std::vector<double> default_time_grid();

} // namespace qwalk

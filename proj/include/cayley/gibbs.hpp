#pragma once

// Exact finite-volume Gibbs computation by exhaustive enumeration.
// Configurations on V_n are walked in Gray-code order so each step
// updates the conditional Hamiltonian through the k+2 balls around the
// flipped spin; energies stay integer coefficient vectors until the
// single floating-point evaluation per configuration.  Sums are
// log-sum-exp shifted by the exact minimum energy and accumulated over
// fixed-size index chunks combined in order, so results are
// bit-identical for any worker count.

#include "cayley/configuration.hpp"
#include "cayley/contours.hpp"
#include "cayley/errors.hpp"
#include "cayley/model.hpp"
#include "cayley/tree.hpp"

#include <atomic>
#include <bit>
#include <cmath>
#include <cstdint>
#include <future>
#include <random>
#include <string>
#include <thread>
#include <utility>
#include <vector>

namespace cayley {

struct GibbsSpec {
    int k = 2;
    int n = 2;
    bool periodic = false;       // sublattice field instead of a constant one
    CouplingConstants couplings{};
    PeriodicFieldConstants field{};
    double beta = 1.0;
    BoundarySpec boundary = BoundarySpec::plus();
    long long cap = (1LL << 24);
    int threads = 0;             // 0: hardware concurrency
    int center_radius = -1;      // -1: balls centered in V_{n+1}
};

struct EventQuery {
    std::string name;
    Vertex site;
    int spin = +1;
};

struct GibbsResult {
    double log_partition = 0.0;
    double root_marginal_plus = 0.0;
    std::vector<std::pair<std::string, double>> event_probabilities;
    long long configurations = 0;
    double min_energy = 0.0;
};

namespace detail {

// Precomputed geometry and coupling constants for the enumeration loop.
struct GibbsEngine {
    int k = 2;
    int n = 0;
    int bits = 0;       // interior spins being enumerated
    int centers = 0;    // ball centers (depth <= center radius)
    Volume vol;         // V_{center_radius + 1}
    std::vector<std::int8_t> base;        // boundary-filled spins, interior = +1
    std::vector<int> nbr_offset;          // per center: slice into nbr_list
    std::vector<int> nbr_list;
    std::vector<std::int8_t> parity;      // per center: depth mod 2
    std::vector<std::vector<int>> touched;  // per interior vertex: affected centers
    std::vector<long long> btab;          // J2 coefficient by disagreement count
    double ha = 0, hb = 0, hc0 = 0, hc1 = 0;  // double couplings (J1/2, J2, a0, a1)

    explicit GibbsEngine(const GibbsSpec& spec)
        : k(spec.k), n(spec.n), vol(spec.k, (spec.center_radius < 0 ? spec.n + 1 : spec.center_radius) + 1) {
        if (spec.beta <= 0) throw std::domain_error("beta must be > 0");
        int radius = spec.center_radius < 0 ? spec.n + 1 : spec.center_radius;
        if (radius < spec.n + 1)
            throw std::invalid_argument("ball centers must cover V_{n+1}");
        bits = vol.count_within(spec.n);
        if (bits >= 62 || (1LL << bits) > spec.cap)
            throw ResourceError("2^" + std::to_string(bits) +
                                " configurations exceed the enumeration cap " +
                                std::to_string(spec.cap));
        Configuration plus_interior(spec.k, spec.n,
                                    std::vector<std::int8_t>(volume_size(spec.k, spec.n), +1),
                                    spec.boundary);
        base = resolve_spins(plus_interior, vol);

        centers = vol.count_within(radius);
        nbr_offset.assign(centers + 1, 0);
        parity.assign(centers, 0);
        for (int c = 0; c < centers; ++c) {
            if (vol.parent_index(c) >= 0) nbr_list.push_back(vol.parent_index(c));
            for (int ch : vol.children_indices(c)) nbr_list.push_back(ch);
            nbr_offset[c + 1] = static_cast<int>(nbr_list.size());
            parity[c] = static_cast<std::int8_t>(vol.depth(c) & 1);
        }
        touched.assign(bits, {});
        for (int v = 0; v < bits; ++v) {
            if (v < centers) touched[v].push_back(v);
            if (vol.parent_index(v) >= 0 && vol.parent_index(v) < centers)
                touched[v].push_back(vol.parent_index(v));
            for (int ch : vol.children_indices(v))
                if (ch < centers) touched[v].push_back(ch);
        }
        btab.assign(k + 2, 0);
        for (long long d = 0; d <= k + 1; ++d) btab[d] = static_cast<long long>(k) * (k + 1) / 2 + 2 * d * (d - k - 1);

        if (spec.periodic) {
            ha = to_double(spec.field.j1) / 2;
            hb = to_double(spec.field.j2);
            hc0 = to_double(spec.field.alpha0);
            hc1 = to_double(spec.field.alpha1);
        } else {
            ha = to_double(spec.couplings.j1) / 2;
            hb = to_double(spec.couplings.j2);
            hc0 = to_double(spec.couplings.alpha);
            hc1 = hc0;  // constant field on both sublattices
        }
    }

    // Ball contribution at one center for the current spin array.
    EnergyForm ball_form(const std::vector<std::int8_t>& spins, int c) const {
        int s = spins[c];
        int d = 0;
        for (int idx = nbr_offset[c]; idx < nbr_offset[c + 1]; ++idx)
            if (spins[nbr_list[idx]] != s) ++d;
        EnergyForm f;
        f.a = k + 1 - 2 * d;
        f.b = btab[d];
        (parity[c] == 0 ? f.c0 : f.c1) = s;
        return f;
    }

    void fill(std::vector<std::int8_t>& spins, long long gray) const {
        spins = base;
        for (int b = 0; b < bits; ++b) spins[b] = (gray >> b & 1) ? +1 : -1;
    }

    EnergyForm total_form(const std::vector<std::int8_t>& spins) const {
        EnergyForm f;
        for (int c = 0; c < centers; ++c) f += ball_form(spins, c);
        return f;
    }

    double energy(const EnergyForm& f) const {
        return ha * static_cast<double>(f.a) + hb * static_cast<double>(f.b) +
               hc0 * static_cast<double>(f.c0) + hc1 * static_cast<double>(f.c1);
    }

    // Walks configurations idx in [begin, end) in Gray-code order and
    // hands (spins, energy) to the visitor.
    template <typename Visitor>
    void walk(long long begin, long long end, Visitor&& visit) const {
        std::vector<std::int8_t> spins;
        fill(spins, begin ^ (begin >> 1));
        EnergyForm f = total_form(spins);
        for (long long idx = begin;;) {
            visit(spins, f);
            if (++idx >= end) break;
            int bit = std::countr_zero(static_cast<unsigned long long>(idx));
            for (int c : touched[bit]) f -= ball_form(spins, c);
            spins[bit] = -spins[bit];
            for (int c : touched[bit]) f += ball_form(spins, c);
        }
    }
};

// Deterministic chunked reduction: workers grab fixed chunks by index,
// partial results are combined in chunk order afterwards.
template <typename ChunkOut, typename Body>
std::vector<ChunkOut> run_chunks(long long total, int threads, Body&& body) {
    constexpr long long kChunk = 1LL << 16;
    long long chunks = (total + kChunk - 1) / kChunk;
    std::vector<ChunkOut> out(static_cast<std::size_t>(chunks));
    int workers = threads > 0 ? threads : static_cast<int>(std::thread::hardware_concurrency());
    if (workers < 1) workers = 1;
    workers = static_cast<int>(std::min<long long>(workers, chunks));
    std::atomic<long long> next{0};
    auto drain = [&]() {
        for (long long c = next.fetch_add(1); c < chunks; c = next.fetch_add(1)) {
            long long begin = c * kChunk;
            long long end = std::min(total, begin + kChunk);
            out[static_cast<std::size_t>(c)] = body(begin, end);
        }
    };
    if (workers == 1) {
        drain();
    } else {
        std::vector<std::future<void>> futures;
        for (int w = 0; w < workers; ++w)
            futures.push_back(std::async(std::launch::async, drain));
        for (auto& fut : futures) fut.get();
    }
    return out;
}

}  // namespace detail

// Exact Gibbs distribution over all spin assignments on V_n with the
// given boundary: log partition value, root marginal, and the requested
// single-site event probabilities.
inline GibbsResult exact_gibbs(const GibbsSpec& spec, const std::vector<EventQuery>& events = {}) {
    detail::GibbsEngine engine(spec);
    long long total = 1LL << engine.bits;

    std::vector<std::pair<int, int>> sites;  // (vertex index, spin)
    sites.emplace_back(0, +1);               // root marginal
    for (const EventQuery& ev : events) {
        detail::check_spin(ev.spin);
        sites.emplace_back(engine.vol.index_of(ev.site), ev.spin);
    }

    // Pass 1: exact minimum energy (for the log-sum-exp shift).
    struct MinOut {
        double h = std::numeric_limits<double>::infinity();
    };
    auto mins = detail::run_chunks<MinOut>(total, spec.threads, [&](long long b, long long e) {
        MinOut m;
        engine.walk(b, e, [&](const std::vector<std::int8_t>&, const EnergyForm& f) {
            m.h = std::min(m.h, engine.energy(f));
        });
        return m;
    });
    double hmin = std::numeric_limits<double>::infinity();
    for (const auto& m : mins) hmin = std::min(hmin, m.h);

    // Pass 2: shifted weights and event accumulators.
    struct SumOut {
        double z = 0;
        std::vector<double> hits;
    };
    double beta = spec.beta;
    auto sums = detail::run_chunks<SumOut>(total, spec.threads, [&](long long b, long long e) {
        SumOut s;
        s.hits.assign(sites.size(), 0.0);
        engine.walk(b, e, [&](const std::vector<std::int8_t>& spins, const EnergyForm& f) {
            double w = std::exp(-beta * (engine.energy(f) - hmin));
            s.z += w;
            for (std::size_t q = 0; q < sites.size(); ++q)
                if (spins[sites[q].first] == sites[q].second) s.hits[q] += w;
        });
        return s;
    });
    double z = 0;
    std::vector<double> hits(sites.size(), 0.0);
    for (const auto& s : sums) {
        z += s.z;
        for (std::size_t q = 0; q < sites.size(); ++q) hits[q] += s.hits[q];
    }

    GibbsResult result;
    result.configurations = total;
    result.min_energy = hmin;
    result.log_partition = std::log(z) - beta * hmin;
    result.root_marginal_plus = hits[0] / z;
    for (std::size_t q = 1; q < sites.size(); ++q)
        result.event_probabilities.emplace_back(events[q - 1].name, hits[q] / z);
    return result;
}

// Probability that a fixed contour appears among the contours of a
// +1-boundary configuration, together with the exponential bound
// exp(-beta * gap * |gamma|) it must satisfy.
struct ContourProbability {
    double probability = 0.0;
    double bound = 0.0;
    long long gamma_size = 0;
    long long matching_configurations = 0;
    bool satisfied = false;
};

inline ContourProbability contour_probability(const Contour& gamma, const GibbsSpec& spec) {
    if (spec.periodic)
        throw std::invalid_argument("contour probabilities are defined for the constant field");
    if (spec.boundary.kind() != BoundarySpec::Kind::constant_plus)
        throw std::invalid_argument("contour probabilities need the +1 boundary condition");
    if (detail::unique_constant_ground_sign(spec.couplings, spec.k) != +1)
        throw UnsupportedRegionError(
            "contour probabilities need the all-plus phase (unique +1 ground state)");

    // Realizability in V_n, and the contour's improper-ball count.
    Configuration lone = config_from_contours({gamma}, spec.k, spec.n);
    auto extracted = extract_contours(lone);
    if (extracted.size() != 1 || extracted.front().support != gamma.support)
        throw std::invalid_argument("contour is not realizable in this volume");
    long long gamma_size =
        contour_stats(extracted.front(), boundary_partition(lone)).size;

    detail::GibbsEngine engine(spec);
    long long total = 1LL << engine.bits;
    Configuration scratch = Configuration::constant(spec.k, spec.n, +1);

    double hmin = std::numeric_limits<double>::infinity();
    engine.walk(0, total, [&](const std::vector<std::int8_t>&, const EnergyForm& f) {
        hmin = std::min(hmin, engine.energy(f));
    });

    double z = 0, num = 0;
    long long matches = 0;
    std::vector<std::int8_t> interior(engine.bits);
    engine.walk(0, total, [&](const std::vector<std::int8_t>& spins, const EnergyForm& f) {
        double w = std::exp(-spec.beta * (engine.energy(f) - hmin));
        z += w;
        std::copy(spins.begin(), spins.begin() + engine.bits, interior.begin());
        for (const Contour& g : extract_contours(scratch.with_interior(interior))) {
            if (g.support == gamma.support) {
                num += w;
                ++matches;
                break;
            }
        }
    });

    ContourProbability out;
    out.probability = num / z;
    out.gamma_size = gamma_size;
    out.matching_configurations = matches;
    out.bound = std::exp(-spec.beta * to_double(energy_gap(spec.couplings, spec.k)) *
                         static_cast<double>(gamma_size));
    out.satisfied = out.probability <= out.bound;
    return out;
}

// Root marginals under both constant boundary conditions at a parameter
// point and at its field mirror (alpha -> -alpha), plus the exact
// spin-flip symmetry residual between (alpha, +bc) and (-alpha, -bc).
struct TwoPhaseRow {
    double beta = 0;
    int boundary = +1;
    int field_sign = +1;  // +1: the given couplings, -1: mirrored field
    double log_partition = 0;
    double root_marginal_plus = 0;
    double root_marginal_minus = 0;
};

struct TwoPhaseReport {
    std::vector<TwoPhaseRow> rows;
    double max_symmetry_residual = 0;
};

inline TwoPhaseReport two_phase_report(int k, int n, const CouplingConstants& cc,
                                       const std::vector<double>& betas,
                                       long long cap = (1LL << 24), int threads = 0) {
    auto minimal = minimal_classes(cc, k);
    if (!(minimal.size() == 1 && minimal.front().i == 0))
        throw std::invalid_argument(
            "two-phase report needs a unique constant-phase parameter point");
    CouplingConstants mirrored{cc.j1, cc.j2, -cc.alpha};

    TwoPhaseReport report;
    for (double beta : betas) {
        TwoPhaseRow rows[4];
        int r = 0;
        for (int field_sign : {+1, -1}) {
            for (int bc : {+1, -1}) {
                GibbsSpec spec;
                spec.k = k;
                spec.n = n;
                spec.couplings = field_sign > 0 ? cc : mirrored;
                spec.beta = beta;
                spec.boundary = BoundarySpec::constant(bc);
                spec.cap = cap;
                spec.threads = threads;
                GibbsResult g = exact_gibbs(spec);
                TwoPhaseRow row;
                row.beta = beta;
                row.boundary = bc;
                row.field_sign = field_sign;
                row.log_partition = g.log_partition;
                row.root_marginal_plus = g.root_marginal_plus;
                row.root_marginal_minus = 1.0 - g.root_marginal_plus;
                rows[r++] = row;
                report.rows.push_back(row);
            }
        }
        // (alpha, +bc) vs (-alpha, -bc) and (alpha, -bc) vs (-alpha, +bc)
        double res1 = std::fabs(rows[0].root_marginal_plus - rows[3].root_marginal_minus);
        double res2 = std::fabs(rows[1].root_marginal_plus - rows[2].root_marginal_minus);
        report.max_symmetry_residual =
            std::max({report.max_symmetry_residual, res1, res2});
    }
    return report;
}

// Single-site Metropolis sampler under the conditional Hamiltonian;
// fully deterministic for a fixed seed.  Intended for volumes beyond
// the exact-enumeration cap.
struct McmcResult {
    double root_marginal_plus = 0;
    double std_error = 0;
    long long sweeps = 0;
    long long burn_in = 0;
    std::uint64_t seed = 0;
    double acceptance_rate = 0;
};

inline McmcResult mcmc_sample(const GibbsSpec& spec, long long sweeps, std::uint64_t seed) {
    if (sweeps < 1) throw std::invalid_argument("sweeps must be >= 1");
    GibbsSpec open = spec;
    open.cap = (1LL << 62);  // the sampler exists to sidestep the cap
    detail::GibbsEngine engine(open);
    std::vector<std::int8_t> spins = engine.base;  // all-plus interior start

    double beta = spec.beta;
    std::mt19937_64 rng(seed);
    auto uniform01 = [&]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
    auto site = [&]() {
        return static_cast<int>((static_cast<unsigned __int128>(rng()) *
                                 static_cast<unsigned>(engine.bits)) >>
                                64);
    };

    long long burn_in = sweeps / 10;
    long long proposals = 0, accepted = 0;
    std::vector<double> samples;
    samples.reserve(static_cast<std::size_t>(sweeps - burn_in));
    for (long long sweep = 0; sweep < sweeps; ++sweep) {
        for (int step = 0; step < engine.bits; ++step) {
            int v = site();
            double before = 0, after = 0;
            for (int c : engine.touched[v]) before += engine.energy(engine.ball_form(spins, c));
            spins[v] = -spins[v];
            for (int c : engine.touched[v]) after += engine.energy(engine.ball_form(spins, c));
            double delta = after - before;
            ++proposals;
            if (delta <= 0 || uniform01() < std::exp(-beta * delta)) {
                ++accepted;
            } else {
                spins[v] = -spins[v];  // reject
            }
        }
        if (sweep >= burn_in) samples.push_back(spins[0] > 0 ? 1.0 : 0.0);
    }

    McmcResult result;
    result.sweeps = sweeps;
    result.burn_in = burn_in;
    result.seed = seed;
    result.acceptance_rate = proposals ? static_cast<double>(accepted) / proposals : 0.0;
    double mean = 0;
    for (double s : samples) mean += s;
    mean /= static_cast<double>(samples.size());
    result.root_marginal_plus = mean;

    // batch means: robust to the sampler's autocorrelation
    std::size_t batches = 32;
    if (samples.size() >= 2 * batches) {
        std::size_t per = samples.size() / batches;
        double var = 0;
        for (std::size_t b = 0; b < batches; ++b) {
            double bm = 0;
            for (std::size_t i = b * per; i < (b + 1) * per; ++i) bm += samples[i];
            bm /= static_cast<double>(per);
            var += (bm - mean) * (bm - mean);
        }
        var /= static_cast<double>(batches - 1);
        result.std_error = std::sqrt(var / static_cast<double>(batches));
    } else {
        result.std_error =
            std::sqrt(std::max(mean * (1 - mean), 1e-12) / static_cast<double>(samples.size()));
    }
    return result;
}

}  // namespace cayley

#pragma once

// Finite-volume spin configurations with boundary conditions, the
// standard configuration families (constant, coset-periodic, weakly
// periodic, alternating), exact Hamiltonians in three equivalent forms,
// the ground-state audit, improper-ball boundaries, and exhaustive
// Peierls verification.

#include "cayley/errors.hpp"
#include "cayley/model.hpp"
#include "cayley/tree.hpp"

#include "json.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cayley {

// Spins outside the interior volume: a constant sign or an explicit
// vertex map (which must cover whatever shell a computation touches).
class BoundarySpec {
public:
    enum class Kind { constant_plus, constant_minus, explicit_map };

    static BoundarySpec plus() { return BoundarySpec(Kind::constant_plus, {}); }
    static BoundarySpec minus() { return BoundarySpec(Kind::constant_minus, {}); }
    static BoundarySpec constant(int s) {
        detail::check_spin(s);
        return s > 0 ? plus() : minus();
    }
    static BoundarySpec explicit_map(std::map<Vertex, int> values) {
        for (const auto& [v, s] : values) detail::check_spin(s);
        return BoundarySpec(Kind::explicit_map, std::move(values));
    }

    Kind kind() const { return kind_; }
    bool is_constant() const { return kind_ != Kind::explicit_map; }
    int constant_sign() const { return kind_ == Kind::constant_plus ? +1 : -1; }
    const std::map<Vertex, int>& values() const { return values_; }

    int spin_at(const Vertex& x) const {
        if (is_constant()) return constant_sign();
        auto it = values_.find(x);
        if (it == values_.end())
            throw IncompleteBoundaryError("boundary spin missing for vertex \"" + x.str() + "\"");
        return it->second;
    }

    BoundarySpec flipped() const {
        if (is_constant()) return constant(-constant_sign());
        std::map<Vertex, int> neg;
        for (const auto& [v, s] : values_) neg.emplace(v, -s);
        return explicit_map(std::move(neg));
    }

    friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;

private:
    BoundarySpec(Kind kind, std::map<Vertex, int> values)
        : kind_(kind), values_(std::move(values)) {}
    Kind kind_;
    std::map<Vertex, int> values_;
};

// A spin assignment on the interior volume V_n plus a boundary rule for
// everything outside.  Immutable after construction; the with_* helpers
// return modified copies sharing the indexed volume.
class Configuration {
public:
    Configuration(int k, int n, std::vector<std::int8_t> interior, BoundarySpec boundary)
        : k_(k),
          n_(n),
          vol_(std::make_shared<const Volume>(k, n)),
          spins_(std::move(interior)),
          boundary_(std::move(boundary)) {
        if (static_cast<int>(spins_.size()) != vol_->size())
            throw std::invalid_argument("interior spin count " + std::to_string(spins_.size()) +
                                        " does not match |V_" + std::to_string(n) + "| = " +
                                        std::to_string(vol_->size()));
        for (std::int8_t s : spins_) detail::check_spin(s);
    }

    static Configuration constant(int k, int n, int s) {
        return Configuration(k, n, std::vector<std::int8_t>(volume_size(k, n), s),
                             BoundarySpec::constant(s));
    }

    int k() const { return k_; }
    int n() const { return n_; }
    const Volume& volume() const { return *vol_; }
    std::shared_ptr<const Volume> volume_ptr() const { return vol_; }
    const BoundarySpec& boundary() const { return boundary_; }
    const std::vector<std::int8_t>& interior_spins() const { return spins_; }

    int spin_at_index(int i) const { return spins_[i]; }

    int spin(const Vertex& x) const {
        if (static_cast<int>(x.length()) <= n_) return spins_[vol_->index_of(x)];
        return boundary_.spin_at(x);
    }

    Configuration with_spin(const Vertex& x, int s) const {
        detail::check_spin(s);
        Configuration copy = *this;
        copy.spins_[vol_->index_of(x)] = static_cast<std::int8_t>(s);
        return copy;
    }

    Configuration with_interior(std::vector<std::int8_t> interior) const {
        Configuration copy = *this;
        if (interior.size() != spins_.size())
            throw std::invalid_argument("interior spin count mismatch");
        copy.spins_ = std::move(interior);
        return copy;
    }

    Configuration with_boundary(BoundarySpec b) const {
        Configuration copy = *this;
        copy.boundary_ = std::move(b);
        return copy;
    }

    Configuration global_flip() const {
        Configuration copy = *this;
        for (auto& s : copy.spins_) s = -s;
        copy.boundary_ = boundary_.flipped();
        return copy;
    }

    std::vector<Vertex> minus_vertices() const {
        std::vector<Vertex> out;
        for (int i = 0; i < vol_->size(); ++i)
            if (spins_[i] < 0) out.push_back(vol_->vertex(i));
        return out;
    }

private:
    int k_, n_;
    std::shared_ptr<const Volume> vol_;
    std::vector<std::int8_t> spins_;
    BoundarySpec boundary_;
};

namespace detail {

// Dense spins over a volume: interior values first (the canonical order
// of V_R extends the canonical order of V_n), boundary fill after.
inline std::vector<std::int8_t> resolve_spins(const Configuration& c, const Volume& vol) {
    if (vol.k() != c.k()) throw std::invalid_argument("resolve_spins tree order mismatch");
    std::vector<std::int8_t> spins(vol.size());
    int interior = vol.count_within(std::min(vol.radius(), c.n()));
    for (int i = 0; i < interior; ++i) spins[i] = static_cast<std::int8_t>(c.spin_at_index(i));
    if (c.boundary().is_constant()) {
        std::fill(spins.begin() + interior, spins.end(),
                  static_cast<std::int8_t>(c.boundary().constant_sign()));
    } else {
        for (int i = interior; i < vol.size(); ++i)
            spins[i] = static_cast<std::int8_t>(c.boundary().spin_at(vol.vertex(i)));
    }
    return spins;
}

// Ball class at a center index; neighbors are the parent plus children,
// which all lie inside vol when depth(center) < vol.radius().
inline SublatticeBallClass ball_class_at(const Volume& vol, std::span<const std::int8_t> spins,
                                         int center) {
    int s = spins[center];
    int disagree = 0;
    int p = vol.parent_index(center);
    if (p >= 0 && spins[p] != s) ++disagree;
    for (int ch : vol.children_indices(center))
        if (spins[ch] != s) ++disagree;
    return SublatticeBallClass{s, disagree, vol.depth(center) & 1};
}

// Sum of ball energies over all centers with depth <= center_radius.
inline EnergyForm ball_sum_form(const Volume& vol, std::span<const std::int8_t> spins,
                                int center_radius) {
    if (center_radius + 1 > vol.radius())
        throw std::invalid_argument("ball centers need one more shell inside the volume");
    EnergyForm f;
    int k = vol.k();
    int centers = vol.count_within(center_radius);
    for (int c = 0; c < centers; ++c)
        f += class_energy_periodic(ball_class_at(vol, spins, c), k);
    return f;
}

}  // namespace detail

// ---------------------------------------------------------------------
// Configuration families
// ---------------------------------------------------------------------

namespace detail {

// Interior V_m by rule, explicit boundary on V_{m+2} \ V_m by the same
// rule, so audits and conditional Hamiltonians can look one or two
// shells past the interior without special cases.
inline Configuration from_rule(int k, int m, const std::function<int(const Vertex&)>& rule) {
    Volume vol(k, m + 2);
    int interior = vol.count_within(m);
    std::vector<std::int8_t> spins(interior);
    for (int i = 0; i < interior; ++i) spins[i] = static_cast<std::int8_t>(rule(vol.vertex(i)));
    std::map<Vertex, int> shell;
    for (int i = interior; i < vol.size(); ++i)
        shell.emplace(vol.vertex(i), rule(vol.vertex(i)));
    return Configuration(k, m, std::move(spins), BoundarySpec::explicit_map(std::move(shell)));
}

}  // namespace detail

inline Configuration generate_constant(int k, int m, int s) {
    return Configuration::constant(k, m, s);
}

// Spin l0 on the even coset of the A-parity subgroup, l1 on the odd one.
inline Configuration generate_coset_periodic(int k, int m, std::span<const int> subset_a, int l0,
                                             int l1) {
    detail::check_spin(l0);
    detail::check_spin(l1);
    return detail::from_rule(
        k, m, [&](const Vertex& x) { return coset_index(x, subset_a, k) == 0 ? l0 : l1; });
}

// Spin l[2*i + j] when the parent lies in coset i and the vertex in
// coset j.  The root has no parent and takes l[0] (it lies in coset 0).
inline Configuration generate_weakly_periodic(int k, int m, std::span<const int> subset_a,
                                              std::array<int, 4> l) {
    for (int s : l) detail::check_spin(s);
    return detail::from_rule(k, m, [&](const Vertex& x) {
        int own = coset_index(x, subset_a, k);
        int up = x.is_root() ? 0 : coset_index(x.parent(), subset_a, k);
        return l[2 * up + own];
    });
}

// s_even on even |x|, -s_even on odd |x|.
inline Configuration generate_alternating(int k, int m, int s_even) {
    detail::check_spin(s_even);
    return detail::from_rule(
        k, m, [&](const Vertex& x) { return even_sublattice(x) ? s_even : -s_even; });
}

// ---------------------------------------------------------------------
// Hamiltonians
// ---------------------------------------------------------------------

// Conditional Hamiltonian of the interior volume V_n given the boundary:
// the sum of ball energies over every ball meeting V_n, i.e. centers in
// V_{n+1}.  center_radius widens the ball set (balls centered further
// out are constant under a constant boundary, shifting the energy by a
// configuration-independent amount).
inline EnergyForm conditional_hamiltonian_form(const Configuration& c, int center_radius = -1) {
    if (center_radius < 0) center_radius = c.n() + 1;
    Volume vol(c.k(), center_radius + 1);
    auto spins = detail::resolve_spins(c, vol);
    return detail::ball_sum_form(vol, spins, center_radius);
}

inline Rational conditional_hamiltonian(const Configuration& c, const CouplingConstants& cc,
                                        int center_radius = -1) {
    return eval(conditional_hamiltonian_form(c, center_radius), cc);
}

inline Rational conditional_hamiltonian_periodic(const Configuration& c,
                                                 const PeriodicFieldConstants& pf,
                                                 int center_radius = -1) {
    return eval(conditional_hamiltonian_form(c, center_radius), pf);
}

// Direct truncation of the full Hamiltonian at radius r:
//   J1 [ sum over edges inside V_r + 1/2 sum over edges W_r--W_{r+1} ]
// + J2   sum over distance-2 pairs with midpoint in V_r
// + field over V_r.
// Equals the sum of ball energies over centers in V_r (tested identity).
inline EnergyForm direct_hamiltonian_form(const Configuration& c, int radius) {
    if (radius < 0) throw std::invalid_argument("truncation radius must be >= 0");
    Volume vol(c.k(), radius + 1);
    auto spins = detail::resolve_spins(c, vol);
    EnergyForm f;
    for (int i = 1; i < vol.size(); ++i) {
        int p = vol.parent_index(i);
        int prod = spins[p] * spins[i];
        // a is the J1/2 coefficient: 2 per interior edge, 1 per half edge
        f.a += (vol.depth(i) <= radius) ? 2 * prod : prod;
    }
    int mids = vol.count_within(radius);
    std::vector<int> nbrs;
    for (int mid = 0; mid < mids; ++mid) {
        nbrs.clear();
        if (vol.parent_index(mid) >= 0) nbrs.push_back(vol.parent_index(mid));
        for (int ch : vol.children_indices(mid)) nbrs.push_back(ch);
        for (std::size_t x = 0; x < nbrs.size(); ++x)
            for (std::size_t y = x + 1; y < nbrs.size(); ++y)
                f.b += spins[nbrs[x]] * spins[nbrs[y]];
    }
    for (int i = 0; i < mids; ++i)
        (vol.depth(i) % 2 == 0 ? f.c0 : f.c1) += spins[i];
    return f;
}

inline Rational direct_hamiltonian(const Configuration& c, const CouplingConstants& cc,
                                   int radius) {
    return eval(direct_hamiltonian_form(c, radius), cc);
}

// Relative Hamiltonian H(sigma, phi): the term-by-term energy difference
// of two configurations on the same volume that coincide outside
// V_{n-1}.  All sums are truncated where differences can live.
inline EnergyForm relative_hamiltonian_form(const Configuration& sigma, const Configuration& phi) {
    if (sigma.k() != phi.k() || sigma.n() != phi.n())
        throw std::invalid_argument("relative Hamiltonian needs configurations on one volume");
    int k = sigma.k();
    int n = sigma.n();
    Volume vol(k, n + 1);
    auto s = detail::resolve_spins(sigma, vol);
    auto p = detail::resolve_spins(phi, vol);
    for (int i = vol.count_within(n - 1); i < vol.size(); ++i)
        if (s[i] != p[i])
            throw std::invalid_argument("configurations differ at \"" + vol.vertex(i).str() +
                                        "\" outside V_" + std::to_string(n - 1));
    EnergyForm f;
    for (int i = 1; i < vol.size(); ++i) {
        int q = vol.parent_index(i);
        f.a += 2 * (s[q] * s[i] - p[q] * p[i]);
    }
    int mids = vol.count_within(n);
    std::vector<int> nbrs;
    for (int mid = 0; mid < mids; ++mid) {
        nbrs.clear();
        if (vol.parent_index(mid) >= 0) nbrs.push_back(vol.parent_index(mid));
        for (int ch : vol.children_indices(mid)) nbrs.push_back(ch);
        for (std::size_t x = 0; x < nbrs.size(); ++x)
            for (std::size_t y = x + 1; y < nbrs.size(); ++y)
                f.b += s[nbrs[x]] * s[nbrs[y]] - p[nbrs[x]] * p[nbrs[y]];
    }
    for (int i = 0; i < mids; ++i)
        (vol.depth(i) % 2 == 0 ? f.c0 : f.c1) += s[i] - p[i];
    return f;
}

inline Rational relative_hamiltonian(const Configuration& sigma, const Configuration& phi,
                                     const CouplingConstants& cc) {
    return eval(relative_hamiltonian_form(sigma, phi), cc);
}

// ---------------------------------------------------------------------
// Ground-state audit
// ---------------------------------------------------------------------

struct AuditOffender {
    Vertex center;
    SublatticeBallClass cls;
    Rational energy;
    Rational min_energy;
};

struct GroundStateReport {
    bool is_ground = true;
    std::vector<AuditOffender> offending_balls;
    std::vector<SublatticeBallClass> realized_classes;  // sorted, unique
    long long balls_checked = 0;
};

namespace detail {

template <typename Couplings>
GroundStateReport audit_impl(const Configuration& c, const Couplings& couplings,
                             const Rational& min_energy, int depth) {
    if (depth < 0) throw std::invalid_argument("audit depth must be >= 0");
    Volume vol(c.k(), depth + 1);
    auto spins = resolve_spins(c, vol);
    GroundStateReport report;
    int centers = vol.count_within(depth);
    report.balls_checked = centers;
    for (int i = 0; i < centers; ++i) {
        SublatticeBallClass cls = ball_class_at(vol, spins, i);
        report.realized_classes.push_back(cls);
        Rational u = eval(class_energy_periodic(cls, c.k()), couplings);
        if (u != min_energy) {
            report.is_ground = false;
            report.offending_balls.push_back(AuditOffender{vol.vertex(i), cls, u, min_energy});
        }
    }
    std::sort(report.realized_classes.begin(), report.realized_classes.end());
    report.realized_classes.erase(
        std::unique(report.realized_classes.begin(), report.realized_classes.end()),
        report.realized_classes.end());
    return report;
}

}  // namespace detail

// Checks that every ball centered in V_depth attains the minimal class
// energy; reports all violations and the set of realized classes.
inline GroundStateReport ground_state_audit(const Configuration& c, const CouplingConstants& cc,
                                            int depth) {
    auto table = energy_table(cc, c.k());
    return detail::audit_impl(c, cc, detail::table_min(table), depth);
}

inline GroundStateReport ground_state_audit_periodic(const Configuration& c,
                                                     const PeriodicFieldConstants& pf, int depth) {
    auto table = energy_table_periodic(pf, c.k());
    return detail::audit_impl(c, pf, detail::table_min(table), depth);
}

// ---------------------------------------------------------------------
// Improper balls and Peierls verification
// ---------------------------------------------------------------------

namespace detail {

// The reference ground state is determined only where the argmin is a
// single constant class (unique ground state = the constant
// configuration of that sign).  Returns the sign.
inline int unique_constant_ground_sign(const CouplingConstants& cc, int k) {
    auto minimal = minimal_classes(cc, k);
    if (minimal.size() == 1 && minimal.front().i == 0) return minimal.front().eps;
    throw UnsupportedRegionError(
        "the ground-state set is not a single constant configuration at this parameter point");
}

// Likewise for the sublattice field: the argmin must be exactly the two
// fully-frustrated classes of an alternating configuration.  Returns
// the even-sublattice spin of that configuration.
inline int unique_alternating_ground_sign(const PeriodicFieldConstants& pf, int k) {
    auto minimal = minimal_classes_periodic(pf, k);
    if (minimal.size() == 2) {
        std::vector<SublatticeBallClass> want_plus = {SublatticeBallClass{+1, k + 1, 0},
                                                      SublatticeBallClass{-1, k + 1, 1}};
        std::vector<SublatticeBallClass> want_minus = {SublatticeBallClass{+1, k + 1, 1},
                                                       SublatticeBallClass{-1, k + 1, 0}};
        std::sort(minimal.begin(), minimal.end());
        if (minimal == want_plus) return +1;
        if (minimal == want_minus) return -1;
    }
    throw UnsupportedRegionError(
        "the ground-state set is not a single alternating configuration at this parameter point");
}

// Centers in V_{n+1} whose ball differs from the reference rule.
inline std::vector<Vertex> improper_centers(const Configuration& c,
                                            const std::function<int(const Vertex&)>& reference) {
    Volume vol(c.k(), c.n() + 2);
    auto spins = resolve_spins(c, vol);
    std::vector<char> differs(vol.size());
    for (int i = 0; i < vol.size(); ++i) differs[i] = spins[i] != reference(vol.vertex(i));
    std::vector<Vertex> out;
    int centers = vol.count_within(c.n() + 1);
    for (int i = 0; i < centers; ++i) {
        bool improper = differs[i];
        if (!improper) {
            int p = vol.parent_index(i);
            if (p >= 0 && differs[p]) improper = true;
            for (int ch : vol.children_indices(i))
                if (differs[ch]) improper = true;
        }
        if (improper) out.push_back(vol.vertex(i));
    }
    return out;
}

}  // namespace detail

// Balls (by center, in canonical order) whose restriction differs from
// every ground state's restriction.  Supported where the ground-state
// set is a unique constant configuration.
inline std::vector<Vertex> improper_balls(const Configuration& c, const CouplingConstants& cc) {
    int g = detail::unique_constant_ground_sign(cc, c.k());
    return detail::improper_centers(c, [g](const Vertex&) { return g; });
}

// Sublattice-field version; supported where the ground-state set is a
// unique alternating configuration.
inline std::vector<Vertex> improper_balls_periodic(const Configuration& c,
                                                   const PeriodicFieldConstants& pf) {
    int g = detail::unique_alternating_ground_sign(pf, c.k());
    return detail::improper_centers(
        c, [g](const Vertex& x) { return even_sublattice(x) ? g : -g; });
}

struct PeierlsReport {
    long long checked = 0;     // configurations enumerated (including the ground state)
    long long violations = 0;  // configurations with H(sigma,phi) < gap * |boundary|
    Rational min_ratio;        // min of H/|boundary| over sigma != phi
    Rational gap;              // the energy gap used as the Peierls constant
    int ground_sign = +1;
};

// Exhaustively checks H(sigma, phi) >= gap * |improper boundary| for
// every sigma equal to the constant ground state phi outside V_r.
inline PeierlsReport peierls_verify(const CouplingConstants& cc, int k, int flip_radius,
                                    long long cap = (1LL << 24)) {
    if (!in_peierls_region(cc, k))
        throw std::invalid_argument("parameter point is outside the Peierls region");
    int g = detail::unique_constant_ground_sign(cc, k);
    long long flips = volume_size(k, flip_radius);
    if (flips >= 63 || (1LL << flips) > cap)
        throw ResourceError("2^" + std::to_string(flips) +
                            " configurations exceed the enumeration cap " + std::to_string(cap));

    PeierlsReport report;
    report.gap = energy_gap(cc, k);
    report.ground_sign = g;
    report.checked = 1LL << flips;

    int n = flip_radius + 1;  // interior radius: W_{n} stays pinned to phi
    Configuration phi = Configuration::constant(k, n, g);
    Volume vol(k, n + 1);
    auto phi_spins = detail::resolve_spins(phi, vol);
    int interior = vol.count_within(flip_radius);

    bool have_ratio = false;
    std::vector<std::int8_t> spins(phi_spins);
    for (long long mask = 0; mask < (1LL << flips); ++mask) {
        if (mask == 0) continue;  // sigma = phi: nothing to check
        std::copy(phi_spins.begin(), phi_spins.begin() + interior, spins.begin());
        for (int b = 0; b < flips; ++b)
            if (mask >> b & 1) spins[b] = static_cast<std::int8_t>(-g);

        EnergyForm rel;
        for (int i = 1; i < vol.size(); ++i) {
            int p = vol.parent_index(i);
            rel.a += 2 * (spins[p] * spins[i] - phi_spins[p] * phi_spins[i]);
        }
        int mids = vol.count_within(n);
        for (int mid = 0; mid < mids; ++mid) {
            std::vector<int> nbrs;
            if (vol.parent_index(mid) >= 0) nbrs.push_back(vol.parent_index(mid));
            for (int ch : vol.children_indices(mid)) nbrs.push_back(ch);
            for (std::size_t x = 0; x < nbrs.size(); ++x)
                for (std::size_t y = x + 1; y < nbrs.size(); ++y)
                    rel.b += spins[nbrs[x]] * spins[nbrs[y]] -
                             phi_spins[nbrs[x]] * phi_spins[nbrs[y]];
        }
        for (int i = 0; i < mids; ++i)
            (vol.depth(i) % 2 == 0 ? rel.c0 : rel.c1) += spins[i] - phi_spins[i];
        Rational h = eval(rel, cc);

        // improper balls: centers in V_{n+1} seeing a flipped spin;
        // flips live in V_{flip_radius}, so centers in V_n suffice
        long long boundary_size = 0;
        for (int i = 0; i < mids; ++i) {
            bool improper = spins[i] != g;
            if (!improper) {
                int p = vol.parent_index(i);
                if (p >= 0 && spins[p] != g) improper = true;
                for (int ch : vol.children_indices(i))
                    if (spins[ch] != g) improper = true;
            }
            if (improper) ++boundary_size;
        }

        if (h < report.gap * boundary_size) ++report.violations;
        Rational ratio = h / boundary_size;
        if (!have_ratio || ratio < report.min_ratio) {
            report.min_ratio = ratio;
            have_ratio = true;
        }
    }
    return report;
}

// ---------------------------------------------------------------------
// Configuration files
// ---------------------------------------------------------------------

inline nlohmann::json config_to_json(const Configuration& c) {
    nlohmann::json j;
    j["k"] = c.k();
    j["n"] = c.n();
    if (c.boundary().is_constant()) {
        j["boundary"] = c.boundary().constant_sign() > 0 ? "plus" : "minus";
    } else {
        nlohmann::json b = nlohmann::json::object();
        for (const auto& [v, s] : c.boundary().values()) b[v.str()] = s;
        j["boundary"] = b;
    }
    nlohmann::json spins = nlohmann::json::object();
    for (int i = 0; i < c.volume().size(); ++i)
        spins[c.volume().vertex(i).str()] = c.spin_at_index(i);
    j["spins"] = spins;
    return j;
}

inline Configuration config_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw std::invalid_argument("configuration file must be a JSON object");
    for (const auto& key : {"k", "n", "boundary", "spins"})
        if (!j.contains(key))
            throw std::invalid_argument(std::string("configuration file missing \"") + key +
                                        "\"");
    if (!j["k"].is_number_integer() || !j["n"].is_number_integer())
        throw std::invalid_argument("\"k\" and \"n\" must be integers");
    int k = j["k"].get<int>();
    int n = j["n"].get<int>();
    Vertex::check_order(k);
    if (n < 0) throw std::invalid_argument("\"n\" must be >= 0");

    auto read_spin = [](const nlohmann::json& v) {
        if (!v.is_number_integer() || (v.get<int>() != 1 && v.get<int>() != -1))
            throw std::invalid_argument("spins must be 1 or -1");
        return v.get<int>();
    };

    BoundarySpec boundary = BoundarySpec::plus();
    if (j["boundary"].is_string()) {
        std::string b = j["boundary"].get<std::string>();
        if (b == "plus")
            boundary = BoundarySpec::plus();
        else if (b == "minus")
            boundary = BoundarySpec::minus();
        else
            throw std::invalid_argument("boundary must be \"plus\", \"minus\" or an object");
    } else if (j["boundary"].is_object()) {
        std::map<Vertex, int> values;
        for (const auto& [key, val] : j["boundary"].items()) {
            Vertex v = Vertex::parse(key, k);
            if (static_cast<int>(v.length()) <= n)
                throw std::invalid_argument("boundary vertex \"" + key +
                                            "\" lies inside the interior volume");
            values.emplace(v, read_spin(val));
        }
        boundary = BoundarySpec::explicit_map(std::move(values));
    } else {
        throw std::invalid_argument("boundary must be \"plus\", \"minus\" or an object");
    }

    if (!j["spins"].is_object()) throw std::invalid_argument("\"spins\" must be an object");
    Volume vol(k, n);
    std::vector<std::int8_t> spins(vol.size(), 0);
    std::vector<char> seen(vol.size(), 0);
    for (const auto& [key, val] : j["spins"].items()) {
        Vertex v = Vertex::parse(key, k);  // rejects non-reduced keys
        if (static_cast<int>(v.length()) > n)
            throw std::invalid_argument("spin vertex \"" + key + "\" lies outside V_" +
                                        std::to_string(n));
        int idx = vol.index_of(v);
        if (seen[idx]) throw std::invalid_argument("duplicate spin for vertex \"" + key + "\"");
        seen[idx] = 1;
        spins[idx] = static_cast<std::int8_t>(read_spin(val));
    }
    for (int i = 0; i < vol.size(); ++i)
        if (!seen[i])
            throw std::invalid_argument("spin missing for vertex \"" + vol.vertex(i).str() +
                                        "\"");
    return Configuration(k, n, std::move(spins), std::move(boundary));
}

inline std::string write_config(const Configuration& c) { return config_to_json(c).dump(2); }

inline Configuration read_config(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("configuration file is not valid JSON: ") +
                                    e.what());
    }
    return config_from_json(j);
}

}  // namespace cayley

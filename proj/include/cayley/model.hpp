#pragma once

// Ball-energy classification for the Ising model with competing
// nearest-neighbor (J1) and next-nearest-neighbor (J2) interactions and
// an external field on the order-k Cayley tree.  A unit-ball
// configuration is classified by its center spin and the number of
// disagreeing neighbors; each class energy is an exact linear form in
// the couplings, so phase regions and the energy gap come out of exact
// rational comparisons with ties preserved.

#include "cayley/rational.hpp"

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cayley {

struct CouplingConstants {
    Rational j1, j2, alpha;
};

// Field alpha0 on the even sublattice (|x| even), alpha1 on the odd one.
struct PeriodicFieldConstants {
    Rational j1, j2, alpha0, alpha1;
};

// (eps, i): center spin eps with i neighbors disagreeing, 0 <= i <= k+1.
struct BallClass {
    int eps = +1;
    int i = 0;

    friend bool operator==(const BallClass&, const BallClass&) = default;
    friend bool operator<(const BallClass& a, const BallClass& b) {
        if (a.eps != b.eps) return a.eps > b.eps;  // plus classes first
        return a.i < b.i;
    }
};

// A ball class together with the sublattice index j of the center.
struct SublatticeBallClass {
    int eps = +1;
    int i = 0;
    int j = 0;

    BallClass ball_class() const { return BallClass{eps, i}; }
    friend bool operator==(const SublatticeBallClass&, const SublatticeBallClass&) = default;
    friend bool operator<(const SublatticeBallClass& a, const SublatticeBallClass& b) {
        if (a.eps != b.eps) return a.eps > b.eps;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    }
};

inline std::string class_label(const BallClass& c) {
    return (c.eps > 0 ? "+" : "-") + std::to_string(c.i);
}

inline std::string class_label(const SublatticeBallClass& c) {
    return class_label(c.ball_class()) + "@" + std::to_string(c.j);
}

// Integer linear form a*(J1/2) + b*J2 + c0*alpha0 + c1*alpha1.  The
// constant-field model is the evaluation at alpha0 = alpha1 = alpha.
// Keeping Hamiltonians in this basis makes every identity an integer
// statement and defers rationals to the final evaluation.
struct EnergyForm {
    long long a = 0, b = 0, c0 = 0, c1 = 0;

    EnergyForm& operator+=(const EnergyForm& o) {
        a += o.a; b += o.b; c0 += o.c0; c1 += o.c1;
        return *this;
    }
    EnergyForm& operator-=(const EnergyForm& o) {
        a -= o.a; b -= o.b; c0 -= o.c0; c1 -= o.c1;
        return *this;
    }
    friend EnergyForm operator+(EnergyForm x, const EnergyForm& y) { return x += y; }
    friend EnergyForm operator-(EnergyForm x, const EnergyForm& y) { return x -= y; }
    friend bool operator==(const EnergyForm&, const EnergyForm&) = default;
};

inline Rational eval(const EnergyForm& f, const CouplingConstants& cc) {
    return cc.j1 * f.a / 2 + cc.j2 * f.b + cc.alpha * (f.c0 + f.c1);
}

inline Rational eval(const EnergyForm& f, const PeriodicFieldConstants& pf) {
    return pf.j1 * f.a / 2 + pf.j2 * f.b + pf.alpha0 * f.c0 + pf.alpha1 * f.c1;
}

// Constant-field class form: U = a*(J1/2) + b*J2 + c*alpha.
struct EnergyCoefficients {
    long long a = 0, b = 0, c = 0;

    EnergyCoefficients& operator+=(const EnergyCoefficients& o) {
        a += o.a; b += o.b; c += o.c;
        return *this;
    }
    EnergyCoefficients& operator-=(const EnergyCoefficients& o) {
        a -= o.a; b -= o.b; c -= o.c;
        return *this;
    }
    friend EnergyCoefficients operator-(EnergyCoefficients x, const EnergyCoefficients& y) {
        return x -= y;
    }
    friend bool operator==(const EnergyCoefficients&, const EnergyCoefficients&) = default;
};

inline Rational eval(const EnergyCoefficients& f, const CouplingConstants& cc) {
    return cc.j1 * f.a / 2 + cc.j2 * f.b + cc.alpha * f.c;
}

// Collapse the sublattice split; valid whenever alpha0 = alpha1.
inline EnergyCoefficients collapse(const EnergyForm& f) {
    return EnergyCoefficients{f.a, f.b, f.c0 + f.c1};
}

namespace detail {
inline void check_spin(int s) {
    if (s != 1 && s != -1) throw std::invalid_argument("spin values must be +1 or -1");
}
inline void check_class_index(int i, int k) {
    if (i < 0 || i > k + 1)
        throw std::invalid_argument("ball class index " + std::to_string(i) +
                                    " out of range 0.." + std::to_string(k + 1));
}
}  // namespace detail

inline BallClass class_of_ball(int center_spin, std::span<const int> neighbor_spins, int k) {
    if (static_cast<int>(neighbor_spins.size()) != k + 1)
        throw std::invalid_argument("a unit ball on the order-" + std::to_string(k) +
                                    " tree has " + std::to_string(k + 1) + " neighbors, got " +
                                    std::to_string(neighbor_spins.size()));
    detail::check_spin(center_spin);
    int disagree = 0;
    for (int s : neighbor_spins) {
        detail::check_spin(s);
        if (s != center_spin) ++disagree;
    }
    return BallClass{center_spin, disagree};
}

// U_{eps,i} = ((k+1)/2 - i) J1 + (k(k+1)/2 + 2i(i-k-1)) J2 + eps*alpha.
inline EnergyCoefficients class_energy(const BallClass& cls, int k) {
    detail::check_class_index(cls.i, k);
    detail::check_spin(cls.eps);
    long long i = cls.i;
    return EnergyCoefficients{k + 1 - 2 * i,
                              static_cast<long long>(k) * (k + 1) / 2 + 2 * i * (i - k - 1),
                              cls.eps};
}

// Same coefficients with the field attached to the center's sublattice.
inline EnergyForm class_energy_periodic(const SublatticeBallClass& cls, int k) {
    EnergyCoefficients base = class_energy(cls.ball_class(), k);
    if (cls.j != 0 && cls.j != 1) throw std::invalid_argument("sublattice index must be 0 or 1");
    return EnergyForm{base.a, base.b, cls.j == 0 ? base.c : 0, cls.j == 1 ? base.c : 0};
}

// Direct evaluation of the ball energy
//   (J1/2) sum_x s(x)s(c) + J2 sum_{x<y} s(x)s(y) + alpha*s(c),
// where the second sum runs over unordered pairs of distinct neighbors
// (exactly the distance-2 pairs inside the ball).  Kept independent of
// the class formula; their agreement is a tested identity.
inline EnergyForm ball_energy_form(int center_spin, std::span<const int> neighbor_spins, int k,
                                   int center_sublattice = 0) {
    if (static_cast<int>(neighbor_spins.size()) != k + 1)
        throw std::invalid_argument("unit-ball neighbor count must be k+1");
    detail::check_spin(center_spin);
    long long edge_sum = 0;
    for (int s : neighbor_spins) {
        detail::check_spin(s);
        edge_sum += s * center_spin;
    }
    long long pair_sum = 0;
    for (std::size_t x = 0; x < neighbor_spins.size(); ++x)
        for (std::size_t y = x + 1; y < neighbor_spins.size(); ++y)
            pair_sum += neighbor_spins[x] * neighbor_spins[y];
    return EnergyForm{edge_sum, pair_sum, center_sublattice == 0 ? center_spin : 0,
                      center_sublattice == 1 ? center_spin : 0};
}

inline Rational ball_energy(int center_spin, std::span<const int> neighbor_spins,
                            const CouplingConstants& cc, int k) {
    return eval(ball_energy_form(center_spin, neighbor_spins, k), cc);
}

inline Rational ball_energy_periodic(int center_spin, std::span<const int> neighbor_spins,
                                     const PeriodicFieldConstants& pf, int k,
                                     int center_sublattice) {
    return eval(ball_energy_form(center_spin, neighbor_spins, k, center_sublattice), pf);
}

inline std::vector<BallClass> all_classes(int k) {
    std::vector<BallClass> out;
    for (int eps : {+1, -1})
        for (int i = 0; i <= k + 1; ++i) out.push_back(BallClass{eps, i});
    return out;
}

inline std::vector<SublatticeBallClass> all_classes_periodic(int k) {
    std::vector<SublatticeBallClass> out;
    for (int eps : {+1, -1})
        for (int i = 0; i <= k + 1; ++i)
            for (int j : {0, 1}) out.push_back(SublatticeBallClass{eps, i, j});
    return out;
}

// All 2(k+2) class energies, exact.
inline std::vector<std::pair<BallClass, Rational>> energy_table(const CouplingConstants& cc,
                                                                int k) {
    std::vector<std::pair<BallClass, Rational>> out;
    for (const BallClass& c : all_classes(k)) out.emplace_back(c, eval(class_energy(c, k), cc));
    return out;
}

// All 4(k+2) class energies of the sublattice-field model.
inline std::vector<std::pair<SublatticeBallClass, Rational>> energy_table_periodic(
    const PeriodicFieldConstants& pf, int k) {
    std::vector<std::pair<SublatticeBallClass, Rational>> out;
    for (const SublatticeBallClass& c : all_classes_periodic(k))
        out.emplace_back(c, eval(class_energy_periodic(c, k), pf));
    return out;
}

namespace detail {
template <typename Table>
Rational table_min(const Table& table) {
    Rational best = table.front().second;
    for (const auto& [cls, u] : table)
        if (u < best) best = u;
    return best;
}
}  // namespace detail

// Exact argmin set of the class-energy table; ties preserved.
inline std::vector<BallClass> minimal_classes(const CouplingConstants& cc, int k) {
    auto table = energy_table(cc, k);
    Rational best = detail::table_min(table);
    std::vector<BallClass> out;
    for (const auto& [cls, u] : table)
        if (u == best) out.push_back(cls);
    return out;
}

inline std::vector<SublatticeBallClass> minimal_classes_periodic(const PeriodicFieldConstants& pf,
                                                                 int k) {
    auto table = energy_table_periodic(pf, k);
    Rational best = detail::table_min(table);
    std::vector<SublatticeBallClass> out;
    for (const auto& [cls, u] : table)
        if (u == best) out.push_back(cls);
    return out;
}

// Gap between the minimal class energy and the next distinct value;
// 0 when all 2(k+2) class energies coincide (only at J1=J2=alpha=0).
inline Rational energy_gap(const CouplingConstants& cc, int k) {
    auto table = energy_table(cc, k);
    Rational best = detail::table_min(table);
    bool found = false;
    Rational second;
    for (const auto& [cls, u] : table) {
        if (u == best) continue;
        if (!found || u < second) {
            second = u;
            found = true;
        }
    }
    return found ? Rational(second - best) : Rational(0);
}

// Label of a phase region: the parameter set where class (eps, m) is
// energy-minimal (with sublattice index j for the periodic-field model).
// interior selects the strict version of every inequality.
struct RegionLabel {
    int eps = +1;
    int m = 0;
    int j = -1;  // -1: constant-field model
    bool interior = false;
};

// Closed-form membership for the constant-field regions, any k >= 1:
//   m = 0:        J1 <= 0, J1 + 2k J2 <= 0, eps*alpha <= 0
//   1 <= m <= k:  J2 >= 0, 2(2m-k-2) J2 <= J1 <= 2(2m-k) J2, eps*alpha <= 0
//   m = k+1:      J1 >= 0, J1 - 2k J2 >= 0, eps*alpha <= 0
inline bool region_membership(const CouplingConstants& cc, int k, const RegionLabel& label) {
    detail::check_class_index(label.m, k);
    detail::check_spin(label.eps);
    auto le = [&](const Rational& x, const Rational& y) {
        return label.interior ? x < y : x <= y;
    };
    if (!le(label.eps * cc.alpha, Rational(0))) return false;
    if (label.m == 0) return le(cc.j1, Rational(0)) && le(cc.j1 + 2 * k * cc.j2, Rational(0));
    if (label.m == k + 1) return le(Rational(0), cc.j1) && le(2 * k * cc.j2, cc.j1);
    return le(Rational(0), cc.j2) && le(2 * (2 * label.m - k - 2) * cc.j2, cc.j1) &&
           le(cc.j1, 2 * (2 * label.m - k) * cc.j2);
}

// Closed-form membership for the periodic-field regions (k = 2 only):
// the J1/J2 block of the matching constant-field region plus
// eps*alpha_j <= 0 and |alpha_{1-j}| <= -eps*alpha_j.
inline bool region_membership_periodic(const PeriodicFieldConstants& pf, const RegionLabel& label,
                                       int k) {
    if (k != 2)
        throw std::invalid_argument("closed-form periodic regions are available for k = 2 only");
    detail::check_class_index(label.m, k);
    detail::check_spin(label.eps);
    if (label.j != 0 && label.j != 1)
        throw std::invalid_argument("periodic region label needs sublattice index 0 or 1");
    auto le = [&](const Rational& x, const Rational& y) {
        return label.interior ? x < y : x <= y;
    };
    bool couplings_ok;
    switch (label.m) {
        case 0: couplings_ok = le(pf.j1, Rational(0)) && le(pf.j1 + 4 * pf.j2, Rational(0)); break;
        case 1: couplings_ok = le(pf.j1, Rational(0)) && le(Rational(0), pf.j1 + 4 * pf.j2); break;
        case 2: couplings_ok = le(Rational(0), pf.j1) && le(pf.j1 - 4 * pf.j2, Rational(0)); break;
        default: couplings_ok = le(Rational(0), pf.j1) && le(Rational(0), pf.j1 - 4 * pf.j2); break;
    }
    if (!couplings_ok) return false;
    const Rational& own = (label.j == 0) ? pf.alpha0 : pf.alpha1;
    const Rational& other = (label.j == 0) ? pf.alpha1 : pf.alpha0;
    Rational slack = -label.eps * own;
    if (!le(Rational(0), slack)) return false;
    return le(abs(other), slack);
}

// The parameter set where the Peierls condition is verified (k = 2):
// J1 < 0, J1 + 4 J2 < 0, alpha != 0 (the union of the two interiors
// of the constant-phase regions with m = 0).
inline bool in_peierls_region(const CouplingConstants& cc, int k = 2) {
    if (k != 2) throw std::invalid_argument("the Peierls region is defined for k = 2 only");
    return cc.j1 < 0 && cc.j1 + 4 * cc.j2 < 0 && cc.alpha != 0;
}

}  // namespace cayley

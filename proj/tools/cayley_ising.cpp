// Command-line surface for the Cayley-tree Ising toolkit: energy tables
// and phase regions, parameter scans, ground-state audits, contour
// reports, exact Gibbs runs, Peierls verification, and contour censuses.
//
// Every output starts with a manifest line echoing the exact parameter
// strings; identical manifests produce byte-identical output.
//
// Exit codes: 0 success/verified, 1 property violated, 2 invalid input,
// 3 resource cap exceeded.

#include "cayley/configuration.hpp"
#include "cayley/contours.hpp"
#include "cayley/gibbs.hpp"
#include "cayley/model.hpp"
#include "cayley/rational.hpp"
#include "cayley/tree.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace cayley;

std::string fmt_double(double x) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", x);
    return buf;
}

std::string display_vertex(const Vertex& v) { return v.is_root() ? "e" : v.str(); }

Vertex parse_vertex_arg(const std::string& s, int k) {
    if (s == "e" || s.empty()) return Vertex{};
    return Vertex::parse(s, k);
}

std::string display_edge(const Edge& e) {
    return "(" + display_vertex(e.lo) + "," + display_vertex(e.hi) + ")";
}

// Manifest: the command plus the exact argument strings, as one sorted
// JSON object on a comment line.
struct Manifest {
    std::string cmd;
    std::map<std::string, std::string> args;

    std::string line() const {
        nlohmann::json j;
        j["cmd"] = cmd;
        j["args"] = args;
        return "# manifest " + j.dump();
    }
};

struct Output {
    std::unique_ptr<std::ofstream> file;
    std::ostream* os = &std::cout;

    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file = std::make_unique<std::ofstream>(path);
            if (!*file) throw std::invalid_argument("cannot open output file '" + path + "'");
            os = file.get();
        }
    }
    std::ostream& stream() { return *os; }
};

// A fixed value "v" or an inclusive rational grid "lo:hi:count".
struct GridSpec {
    std::vector<Rational> points;

    static GridSpec parse(const std::string& text) {
        GridSpec g;
        auto first = text.find(':');
        if (first == std::string::npos) {
            g.points.push_back(parse_rational(text));
            return g;
        }
        auto second = text.find(':', first + 1);
        if (second == std::string::npos)
            throw std::invalid_argument("grid spec must be \"value\" or \"lo:hi:count\": '" +
                                        text + "'");
        Rational lo = parse_rational(text.substr(0, first));
        Rational hi = parse_rational(text.substr(first + 1, second - first - 1));
        long count = std::stol(text.substr(second + 1));
        if (count < 1) throw std::invalid_argument("grid count must be >= 1");
        if (count == 1) {
            g.points.push_back(lo);
            return g;
        }
        Rational step = (hi - lo) / (count - 1);
        for (long i = 0; i < count; ++i) g.points.push_back(lo + step * i);
        return g;
    }
};

struct CouplingFlags {
    std::string j1, j2, alpha, alpha0, alpha1;

    void attach(CLI::App* cmd, bool allow_periodic = true) {
        cmd->add_option("--j1", j1, "nearest-neighbor coupling (exact rational)")->required();
        cmd->add_option("--j2", j2, "next-nearest-neighbor coupling (exact rational)")
            ->required();
        cmd->add_option("--alpha", alpha, "constant external field (exact rational)");
        if (allow_periodic) {
            cmd->add_option("--alpha0", alpha0, "field on the even sublattice");
            cmd->add_option("--alpha1", alpha1, "field on the odd sublattice");
        }
    }

    bool periodic() const { return alpha.empty(); }

    CouplingConstants constant() const {
        if (alpha.empty())
            throw std::invalid_argument("this command needs --alpha (constant field)");
        return CouplingConstants{parse_rational(j1), parse_rational(j2), parse_rational(alpha)};
    }

    PeriodicFieldConstants sublattice() const {
        if (alpha0.empty() || alpha1.empty())
            throw std::invalid_argument("periodic field needs both --alpha0 and --alpha1");
        return PeriodicFieldConstants{parse_rational(j1), parse_rational(j2),
                                      parse_rational(alpha0), parse_rational(alpha1)};
    }

    void validate() const {
        bool has_const = !alpha.empty();
        bool has_periodic = !alpha0.empty() || !alpha1.empty();
        if (has_const == has_periodic)
            throw std::invalid_argument(
                "give either --alpha or the pair --alpha0/--alpha1, not both");
        if (has_periodic && (alpha0.empty() || alpha1.empty()))
            throw std::invalid_argument("periodic field needs both --alpha0 and --alpha1");
    }

    void record(Manifest& m) const {
        m.args["j1"] = j1;
        m.args["j2"] = j2;
        if (!alpha.empty()) m.args["alpha"] = alpha;
        if (!alpha0.empty()) m.args["alpha0"] = alpha0;
        if (!alpha1.empty()) m.args["alpha1"] = alpha1;
    }
};

std::string join_labels(const std::vector<BallClass>& classes) {
    std::string s;
    for (const auto& c : classes) {
        if (!s.empty()) s += ";";
        s += class_label(c);
    }
    return s;
}

std::string join_labels(const std::vector<SublatticeBallClass>& classes) {
    std::string s;
    for (const auto& c : classes) {
        if (!s.empty()) s += ";";
        s += class_label(c);
    }
    return s;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot read config file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------------------------------------------------------------- utable

int cmd_utable(int k, const CouplingFlags& flags, const std::string& out_path) {
    Manifest m{"utable", {{"k", std::to_string(k)}}};
    flags.record(m);
    Output out(out_path);
    out.stream() << m.line() << "\n";
    out.stream() << "k: " << k << "\n";
    if (!flags.periodic()) {
        CouplingConstants cc = flags.constant();
        out.stream() << "model: constant\nclass,energy\n";
        for (const auto& [cls, u] : energy_table(cc, k))
            out.stream() << class_label(cls) << "," << format_rational(u) << "\n";
        out.stream() << "minimal: " << join_labels(minimal_classes(cc, k)) << "\n";
        out.stream() << "energy_gap: " << format_rational(energy_gap(cc, k)) << "\n";
        std::string closed, interior;
        for (int eps : {+1, -1})
            for (int mm = 0; mm <= k + 1; ++mm) {
                if (region_membership(cc, k, RegionLabel{eps, mm, -1, false}))
                    closed += (closed.empty() ? "" : ";") + class_label(BallClass{eps, mm});
                if (region_membership(cc, k, RegionLabel{eps, mm, -1, true}))
                    interior += (interior.empty() ? "" : ";") + class_label(BallClass{eps, mm});
            }
        out.stream() << "regions: " << closed << "\n";
        out.stream() << "interior_regions: " << interior << "\n";
        if (k == 2)
            out.stream() << "peierls_region: " << (in_peierls_region(cc) ? "yes" : "no") << "\n";
    } else {
        PeriodicFieldConstants pf = flags.sublattice();
        out.stream() << "model: periodic\nclass,energy\n";
        for (const auto& [cls, u] : energy_table_periodic(pf, k))
            out.stream() << class_label(cls) << "," << format_rational(u) << "\n";
        out.stream() << "minimal: " << join_labels(minimal_classes_periodic(pf, k)) << "\n";
        if (k == 2) {
            std::string closed;
            for (int eps : {+1, -1})
                for (int mm = 0; mm <= k + 1; ++mm)
                    for (int jj : {0, 1})
                        if (region_membership_periodic(pf, RegionLabel{eps, mm, jj, false}, k))
                            closed += (closed.empty() ? "" : ";") +
                                      class_label(SublatticeBallClass{eps, mm, jj});
            out.stream() << "regions: " << closed << "\n";
        }
    }
    return 0;
}

// ------------------------------------------------------------------ scan

int cmd_scan(int k, const std::string& j1_spec, const std::string& j2_spec,
             const std::string& alpha_spec, const std::string& out_path) {
    GridSpec g1 = GridSpec::parse(j1_spec);
    GridSpec g2 = GridSpec::parse(j2_spec);
    GridSpec ga = GridSpec::parse(alpha_spec);
    long long total = static_cast<long long>(g1.points.size()) * g2.points.size() *
                      ga.points.size();
    if (total > 1000000)
        throw std::invalid_argument("grid has " + std::to_string(total) +
                                    " points; the limit is 1000000");
    Manifest m{"scan",
               {{"k", std::to_string(k)}, {"j1", j1_spec}, {"j2", j2_spec}, {"alpha", alpha_spec}}};
    Output out(out_path);
    out.stream() << m.line() << "\n";
    out.stream() << "j1,j2,alpha,min_classes,energy_gap,peierls\n";
    for (const Rational& a : ga.points)
        for (const Rational& j1 : g1.points)
            for (const Rational& j2 : g2.points) {
                CouplingConstants cc{j1, j2, a};
                out.stream() << format_rational(j1) << "," << format_rational(j2) << ","
                             << format_rational(a) << "," << join_labels(minimal_classes(cc, k))
                             << "," << format_rational(energy_gap(cc, k)) << ",";
                if (k == 2) out.stream() << (in_peierls_region(cc) ? 1 : 0);
                out.stream() << "\n";
            }
    return 0;
}

// ----------------------------------------------------------------- audit

int cmd_audit(const std::string& config_path, const CouplingFlags& flags, int depth,
              const std::string& out_path) {
    Configuration config = read_config(read_file(config_path));
    if (depth < 0) depth = std::max(0, std::min(3, config.n() - 1));
    Manifest m{"audit", {{"config", config_path}, {"depth", std::to_string(depth)}}};
    flags.record(m);
    GroundStateReport report = flags.periodic()
                                   ? ground_state_audit_periodic(config, flags.sublattice(), depth)
                                   : ground_state_audit(config, flags.constant(), depth);
    Output out(out_path);
    out.stream() << m.line() << "\n";
    out.stream() << "model: " << (flags.periodic() ? "periodic" : "constant") << "\n";
    out.stream() << "depth: " << depth << "\n";
    out.stream() << "balls_checked: " << report.balls_checked << "\n";
    out.stream() << "realized_classes: " << join_labels(report.realized_classes) << "\n";
    out.stream() << "offending_balls: " << report.offending_balls.size() << "\n";
    std::size_t shown = std::min<std::size_t>(report.offending_balls.size(), 20);
    for (std::size_t i = 0; i < shown; ++i) {
        const AuditOffender& o = report.offending_balls[i];
        out.stream() << "offender: center=" << display_vertex(o.center)
                     << " class=" << class_label(o.cls) << " energy=" << format_rational(o.energy)
                     << " min=" << format_rational(o.min_energy) << "\n";
    }
    if (shown < report.offending_balls.size())
        out.stream() << "offender: ... " << (report.offending_balls.size() - shown)
                     << " more\n";
    out.stream() << "ground: " << (report.is_ground ? "yes" : "no") << "\n";
    return report.is_ground ? 0 : 1;
}

// -------------------------------------------------------------- contours

int cmd_contours(const std::string& config_path, const CouplingFlags& flags,
                 const std::string& out_path) {
    Configuration config = read_config(read_file(config_path));
    Manifest m{"contours", {{"config", config_path}}};
    bool with_energy = !flags.j1.empty();
    if (with_energy) flags.record(m);
    Output out(out_path);
    out.stream() << m.line() << "\n";
    auto contours = extract_contours(config);
    BoundaryPartition partition = boundary_partition(config);
    out.stream() << "improper_balls: " << partition.total() << "\n";
    for (int eps : {+1, -1})
        for (int i = (eps > 0 ? 1 : 0); i <= config.k() + 1; ++i)
            if (partition.count(eps, i))
                out.stream() << "boundary_part: " << class_label(BallClass{eps, i}) << " "
                             << partition.count(eps, i) << "\n";
    out.stream() << "contours: " << contours.size() << "\n";
    for (std::size_t idx = 0; idx < contours.size(); ++idx) {
        const Contour& gamma = contours[idx];
        ContourStats stats = contour_stats(gamma, partition);
        out.stream() << "contour " << idx + 1 << ": size=" << stats.size
                     << " support_edges=" << gamma.support.size()
                     << " interior=" << gamma.interior.size() << "\n";
        out.stream() << "  support:";
        for (const Edge& e : gamma.support) out.stream() << " " << display_edge(e);
        out.stream() << "\n  interior:";
        for (const Vertex& v : gamma.interior) out.stream() << " " << display_vertex(v);
        out.stream() << "\n  improper_counts:";
        for (const auto& [key, count] : stats.counts)
            out.stream() << " " << class_label(BallClass{key.first, key.second}) << "=" << count;
        out.stream() << "\n";
    }
    if (with_energy) {
        CouplingConstants cc = flags.constant();
        out.stream() << "contour_hamiltonian: " << format_rational(contour_hamiltonian(config, cc))
                     << "\n";
        out.stream() << "conditional_hamiltonian: "
                     << format_rational(conditional_hamiltonian(config, cc)) << "\n";
    }
    return 0;
}

// ----------------------------------------------------------------- gibbs

int cmd_gibbs(int k, int n, const std::vector<std::string>& beta_args, const std::string& bc,
              const CouplingFlags& flags, bool two_phase, bool mcmc, long long sweeps,
              unsigned long long seed, long long cap, int threads, const std::string& format,
              const std::string& out_path) {
    std::vector<double> betas;
    std::vector<std::string> beta_strings;
    for (const std::string& arg : beta_args) {
        std::stringstream ss(arg);
        std::string piece;
        while (std::getline(ss, piece, ',')) {
            betas.push_back(to_double(parse_rational(piece)));
            beta_strings.push_back(piece);
        }
    }
    if (betas.empty()) throw std::invalid_argument("at least one --beta is required");
    if (bc != "plus" && bc != "minus")
        throw std::invalid_argument("--bc must be plus or minus");

    Manifest m{"gibbs",
               {{"k", std::to_string(k)},
                {"n", std::to_string(n)},
                {"bc", bc},
                {"cap", std::to_string(cap)},
                {"format", format}}};
    for (std::size_t i = 0; i < beta_strings.size(); ++i)
        m.args["beta" + (beta_strings.size() > 1 ? std::to_string(i) : "")] = beta_strings[i];
    flags.record(m);
    if (two_phase) m.args["two_phase"] = "1";
    if (mcmc) {
        m.args["mcmc"] = "1";
        m.args["sweeps"] = std::to_string(sweeps);
        m.args["seed"] = std::to_string(seed);
    }
    Output out(out_path);
    out.stream() << m.line() << "\n";

    if (two_phase) {
        if (flags.periodic())
            throw std::invalid_argument("--two-phase needs the constant-field model");
        TwoPhaseReport report = two_phase_report(k, n, flags.constant(), betas, cap, threads);
        out.stream() << "beta,boundary,field_sign,log_partition,root_marginal_plus\n";
        for (const TwoPhaseRow& row : report.rows)
            out.stream() << fmt_double(row.beta) << "," << (row.boundary > 0 ? "plus" : "minus")
                         << "," << (row.field_sign > 0 ? "+1" : "-1") << ","
                         << fmt_double(row.log_partition) << ","
                         << fmt_double(row.root_marginal_plus) << "\n";
        out.stream() << "max_symmetry_residual: " << fmt_double(report.max_symmetry_residual)
                     << "\n";
        bool ok = report.max_symmetry_residual <= 1e-12;
        out.stream() << "symmetry: " << (ok ? "ok" : "violated") << "\n";
        return ok ? 0 : 1;
    }

    GibbsSpec spec;
    spec.k = k;
    spec.n = n;
    spec.boundary = bc == "plus" ? BoundarySpec::plus() : BoundarySpec::minus();
    spec.cap = cap;
    spec.threads = threads;
    if (flags.periodic()) {
        spec.periodic = true;
        spec.field = flags.sublattice();
    } else {
        spec.couplings = flags.constant();
    }

    if (format == "csv")
        out.stream() << (mcmc ? "beta,boundary,root_marginal_plus,std_error,sweeps,seed\n"
                              : "beta,boundary,log_partition,root_marginal_plus\n");
    for (double beta : betas) {
        spec.beta = beta;
        if (mcmc) {
            McmcResult r = mcmc_sample(spec, sweeps, seed);
            if (format == "csv")
                out.stream() << fmt_double(beta) << "," << bc << ","
                             << fmt_double(r.root_marginal_plus) << ","
                             << fmt_double(r.std_error) << "," << r.sweeps << "," << r.seed
                             << "\n";
            else if (format == "json")
                out.stream() << nlohmann::json{{"beta", beta},
                                               {"boundary", bc},
                                               {"root_marginal_plus", r.root_marginal_plus},
                                               {"std_error", r.std_error},
                                               {"sweeps", r.sweeps},
                                               {"seed", r.seed}}
                                    .dump()
                             << "\n";
            else
                out.stream() << "beta=" << fmt_double(beta) << " boundary=" << bc
                             << " root_marginal_plus=" << fmt_double(r.root_marginal_plus)
                             << " std_error=" << fmt_double(r.std_error)
                             << " acceptance_rate=" << fmt_double(r.acceptance_rate) << "\n";
        } else {
            GibbsResult g = exact_gibbs(spec);
            if (format == "csv")
                out.stream() << fmt_double(beta) << "," << bc << ","
                             << fmt_double(g.log_partition) << ","
                             << fmt_double(g.root_marginal_plus) << "\n";
            else if (format == "json")
                out.stream() << nlohmann::json{{"beta", beta},
                                               {"boundary", bc},
                                               {"log_partition", g.log_partition},
                                               {"root_marginal_plus", g.root_marginal_plus}}
                                    .dump()
                             << "\n";
            else
                out.stream() << "beta=" << fmt_double(beta) << " boundary=" << bc
                             << " log_partition=" << fmt_double(g.log_partition)
                             << " root_marginal_plus=" << fmt_double(g.root_marginal_plus)
                             << "\n";
        }
    }
    return 0;
}

// --------------------------------------------------------------- peierls

int cmd_peierls(int k, const CouplingFlags& flags, int radius, long long cap,
                const std::string& out_path) {
    CouplingConstants cc = flags.constant();
    Manifest m{"peierls",
               {{"k", std::to_string(k)},
                {"radius", std::to_string(radius)},
                {"cap", std::to_string(cap)}}};
    flags.record(m);
    Output out(out_path);
    out.stream() << m.line() << "\n";
    PeierlsReport report = peierls_verify(cc, k, radius, cap);
    out.stream() << "energy_gap: " << format_rational(report.gap) << "\n";
    out.stream() << "ground_sign: " << (report.ground_sign > 0 ? "+1" : "-1") << "\n";
    long long satisfied = report.checked - report.violations;
    out.stream() << satisfied << "/" << report.checked << " satisfied, min ratio "
                 << fmt_double(to_double(report.min_ratio)) << " (exact "
                 << format_rational(report.min_ratio) << ")\n";
    return report.violations == 0 ? 0 : 1;
}

// -------------------------------------------------------------------- nr

int cmd_nr(int k, int volume_radius, int rmax, const std::string& x_arg, long long cap,
           const std::string& out_path) {
    Vertex x = parse_vertex_arg(x_arg, k);
    Manifest m{"nr",
               {{"k", std::to_string(k)},
                {"volume", std::to_string(volume_radius)},
                {"rmax", std::to_string(rmax)},
                {"x", x_arg},
                {"cap", std::to_string(cap)}}};
    Output out(out_path);
    out.stream() << m.line() << "\n";
    auto census = count_contours_through(x, k, volume_radius, cap);
    out.stream() << "r,count,bound_ok\n";
    bool all_ok = true;
    for (const auto& [r, count] : census) {
        // Lemma-type bound with constant 1: N_r <= (4e)^{2r}, checked in logs
        bool ok = std::log(static_cast<double>(count)) <=
                  2.0 * r * (std::log(4.0) + 1.0) + 1e-12;
        all_ok = all_ok && ok;
        if (r <= rmax) out.stream() << r << "," << count << "," << (ok ? 1 : 0) << "\n";
    }
    out.stream() << "bound: " << (all_ok ? "ok" : "violated") << "\n";
    return all_ok ? 0 : 1;
}

// -------------------------------------------------------------- mkconfig

int cmd_mkconfig(int k, int n, const std::string& family, int spin,
                 const std::vector<int>& subset, const std::vector<int>& levels,
                 const std::string& bc, const std::string& out_path) {
    Configuration config = Configuration::constant(k, n, +1);
    if (family == "constant") {
        config = generate_constant(k, n, spin);
    } else if (family == "alternating") {
        config = generate_alternating(k, n, spin);
    } else if (family == "coset-periodic") {
        if (levels.size() != 2)
            throw std::invalid_argument("coset-periodic needs --levels l0,l1");
        config = generate_coset_periodic(k, n, subset, levels[0], levels[1]);
    } else if (family == "weakly-periodic") {
        if (levels.size() != 4)
            throw std::invalid_argument("weakly-periodic needs --levels l00,l01,l10,l11");
        config = generate_weakly_periodic(k, n, subset,
                                          {levels[0], levels[1], levels[2], levels[3]});
    } else {
        throw std::invalid_argument(
            "--family must be constant, alternating, coset-periodic or weakly-periodic");
    }
    if (bc == "plus")
        config = config.with_boundary(BoundarySpec::plus());
    else if (bc == "minus")
        config = config.with_boundary(BoundarySpec::minus());
    else if (bc != "rule")
        throw std::invalid_argument("--bc must be plus, minus or rule");
    Output out(out_path);
    out.stream() << write_config(config) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact toolkit for the Ising model with competing interactions and an "
                 "external field on the Cayley tree"};
    app.require_subcommand(1);

    int k = 2, n = 2, depth = -1, radius = 2, volume_radius = 2, rmax = 32, spin = +1;
    int threads = 0;
    long long cap = 1LL << 24, census_cap = 1LL << 20, sweeps = 100000;
    unsigned long long seed = 1;
    std::string out_path, config_path, bc = "plus", x_arg = "e", format = "text";
    std::string family = "constant";
    std::string j1_spec, j2_spec, alpha_spec = "0";
    std::vector<std::string> beta_args;
    std::vector<int> subset, levels;
    CouplingFlags utable_flags, audit_flags, contour_flags, gibbs_flags, peierls_flags;
    bool two_phase = false, mcmc = false;

    auto* utable = app.add_subcommand("utable", "class-energy table, minimal classes, regions");
    utable->add_option("--k", k, "tree order")->default_val(2);
    utable_flags.attach(utable);
    utable->add_option("-o,--out", out_path, "output file (default stdout)");

    auto* scan = app.add_subcommand("scan", "CSV scan of minimal classes over a coupling grid");
    scan->add_option("--k", k)->default_val(2);
    scan->add_option("--j1", j1_spec, "value or lo:hi:count")->required();
    scan->add_option("--j2", j2_spec, "value or lo:hi:count")->required();
    scan->add_option("--alpha", alpha_spec, "value or lo:hi:count")->required();
    scan->add_option("-o,--out", out_path);

    auto* audit = app.add_subcommand("audit", "ground-state audit of a configuration file");
    audit->add_option("--config", config_path, "configuration JSON file")->required();
    audit_flags.attach(audit);
    audit->add_option("--depth", depth, "audit ball centers in V_depth (default min(3, n-1))");
    audit->add_option("-o,--out", out_path);

    auto* contours = app.add_subcommand("contours", "contour report for a +1-boundary config");
    contours->add_option("--config", config_path)->required();
    contour_flags.attach(contours, false);
    contours->get_option("--j1")->required(false);
    contours->get_option("--j2")->required(false);
    contours->add_option("-o,--out", out_path);

    auto* gibbs = app.add_subcommand("gibbs", "exact finite-volume Gibbs computation");
    gibbs->add_option("--k", k)->default_val(2);
    gibbs->add_option("--n", n, "interior volume radius")->default_val(2);
    gibbs->add_option("--beta", beta_args, "inverse temperature (repeat or comma-separate)")
        ->required();
    gibbs->add_option("--bc", bc, "boundary condition: plus|minus")->default_val("plus");
    gibbs_flags.attach(gibbs);
    gibbs->add_flag("--two-phase", two_phase,
                    "report both boundary conditions and the mirrored field");
    gibbs->add_flag("--mcmc", mcmc, "Metropolis estimate instead of exact enumeration");
    gibbs->add_option("--sweeps", sweeps)->default_val(100000);
    gibbs->add_option("--seed", seed)->default_val(1);
    gibbs->add_option("--cap", cap, "exact-enumeration cap")->default_val(1LL << 24);
    gibbs->add_option("--threads", threads, "worker threads (0 = hardware)")->default_val(0);
    gibbs->add_option("--format", format, "text|csv|json")->default_val("text");
    gibbs->add_option("-o,--out", out_path);

    auto* peierls = app.add_subcommand("peierls", "exhaustive Peierls-condition verification");
    peierls->add_option("--k", k)->default_val(2);
    peierls_flags.attach(peierls, false);
    peierls->add_option("--radius", radius, "flip volume radius")->default_val(2);
    peierls->add_option("--cap", cap)->default_val(1LL << 24);
    peierls->add_option("-o,--out", out_path);

    auto* nr = app.add_subcommand("nr", "census of contours through a vertex by size");
    nr->add_option("--k", k)->default_val(2);
    nr->add_option("--volume", volume_radius, "minus subsets range over V_volume")
        ->default_val(2);
    nr->add_option("--rmax", rmax, "largest contour size to print")->default_val(32);
    nr->add_option("--x", x_arg, "vertex the contours must touch (\"e\" = root)")
        ->default_val("e");
    nr->add_option("--cap", census_cap)->default_val(1LL << 20);
    nr->add_option("-o,--out", out_path);

    auto* mkconfig = app.add_subcommand("mkconfig", "write a configuration file of a family");
    mkconfig->add_option("--k", k)->default_val(2);
    mkconfig->add_option("--n", n)->default_val(3);
    mkconfig
        ->add_option("--family", family,
                     "constant|alternating|coset-periodic|weakly-periodic")
        ->default_val("constant");
    mkconfig->add_option("--spin", spin, "constant value / even-sublattice value")
        ->default_val(1);
    mkconfig->add_option("--subset", subset, "generator subset A (e.g. --subset 1 2)");
    mkconfig->add_option("--levels", levels, "coset values: l0 l1 or l00 l01 l10 l11");
    mkconfig->add_option("--bc", bc, "boundary written to the file: rule|plus|minus")
        ->default_val("rule");
    mkconfig->add_option("-o,--out", out_path);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return e.get_exit_code() == 0 ? 0 : 2;
    }

    try {
        if (utable->parsed()) {
            utable_flags.validate();
            return cmd_utable(k, utable_flags, out_path);
        }
        if (scan->parsed()) return cmd_scan(k, j1_spec, j2_spec, alpha_spec, out_path);
        if (audit->parsed()) {
            audit_flags.validate();
            return cmd_audit(config_path, audit_flags, depth, out_path);
        }
        if (contours->parsed()) {
            if (!contour_flags.j1.empty() || !contour_flags.j2.empty() ||
                !contour_flags.alpha.empty())
                contour_flags.validate();
            return cmd_contours(config_path, contour_flags, out_path);
        }
        if (gibbs->parsed()) {
            gibbs_flags.validate();
            return cmd_gibbs(k, n, beta_args, bc, gibbs_flags, two_phase, mcmc, sweeps, seed,
                             cap, threads, format, out_path);
        }
        if (peierls->parsed()) {
            peierls_flags.validate();
            return cmd_peierls(k, peierls_flags, radius, cap, out_path);
        }
        if (nr->parsed()) return cmd_nr(k, volume_radius, rmax, x_arg, census_cap, out_path);
        if (mkconfig->parsed())
            return cmd_mkconfig(k, n, family, spin, subset, levels, bc, out_path);
    } catch (const cayley::ResourceError& e) {
        std::cerr << "resource: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

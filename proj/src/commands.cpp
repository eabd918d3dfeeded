#include "qes/commands.hpp"

#include <cmath>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "qes/errors.hpp"
#include "qes/oracle.hpp"
#include "qes/razavy.hpp"
#include "qes/validator.hpp"

#ifndef QES_VERSION
#define QES_VERSION "0.0.0"
#endif

namespace qes::cli {

namespace {

struct UsageError : Error {
    using Error::Error;
};

const char* const kStateColumns[] = {"psi0_m", "psi1_m", "psi2_m", "psi1_p", "psi2_p"};

std::string fmt(double v, int digits = 12) {
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

io::GridExport base_export(const ConstructedSystem& sys, const std::string& command, int grid) {
    io::GridExport g;
    g.text["tool"] = "qesforge";
    g.text["version"] = QES_VERSION;
    g.text["command"] = command;
    g.text["generator"] = sys.generator().expression().source();
    g.numbers["eps0"] = sys.energies().eps0;
    g.numbers["eps1"] = sys.energies().eps1;
    g.numbers["period"] = sys.period();
    g.numbers["grid"] = grid;
    const auto e = sys.energy_levels();
    g.energies.assign(e.begin(), e.end());
    return g;
}

std::vector<double> grid_points(double period, int grid) {
    std::vector<double> x(static_cast<std::size_t>(grid));
    for (int i = 0; i < grid; ++i) x[static_cast<std::size_t>(i)] = period * i / grid;
    return x;
}

void require_grid(int grid) {
    if (grid < 64) throw UsageError("--grid must be at least 64");
}

EnergyPair energies_from(const RunConfig& c) {
    if (!c.eps0 || !c.eps1) throw UsageError("--eps0 and --eps1 are required");
    return EnergyPair(*c.eps0, *c.eps1);
}

void print_report(const AdmissibilityReport& r, std::ostream& out) {
    out << "zeros of U:\n";
    for (const auto& z : r.zeros)
        out << "  x = " << fmt(z.x) << "  order " << z.order << "  " << to_string(z.classification) << "\n";
    out << "checks:\n";
    for (const auto& c : r.checks) {
        out << "  " << std::left << std::setw(30) << c.name << (c.informational ? "info" : (c.passed ? "pass" : "FAIL"));
        out << "  value " << fmt(c.value);
        if (c.has_location) out << " at x = " << fmt(c.location);
        if (!c.detail.empty()) out << "  (" << c.detail << ")";
        out << "\n";
    }
    out << (r.passed ? "admissible" : "not admissible") << "\n";
}

void emit(const io::GridExport& g, const RunConfig& c, std::ostream& out) {
    if (c.out) {
        io::write_export(*c.out, g, c.format);
        out << "wrote " << g.rows() << " rows x " << g.columns.size() << " columns to " << *c.out << "\n";
    } else {
        out << (c.format == io::Format::Csv ? io::to_csv(g) : io::to_json(g));
    }
}

// Parses and validates; returns nullopt after printing when the generator is rejected.
std::optional<GeneratingFunction> admissible_generator(const RunConfig& c, std::ostream& err) {
    if (!c.u) throw UsageError("--u is required");
    const Expression ex = Expression::parse(*c.u);
    if (!c.eps0 || !c.eps1) throw UsageError("--eps0 and --eps1 are required");
    const auto report = check_admissibility(ex, *c.eps0, *c.eps1, c.period);
    if (!report.passed) {
        err << "generator is not admissible; failed checks:";
        for (const auto& n : report.failed_checks()) err << " " << n;
        err << "\n";
        return std::nullopt;
    }
    return GeneratingFunction(ex, energies_from(c), c.period);
}

// Trigonometric interpolant of uniform samples over one period.
class Interpolant {
public:
    Interpolant(const std::vector<double>& f, double period) : period_(period) {
        const std::size_t n = f.size();
        const std::size_t kmax = n / 2;
        a_.assign(kmax + 1, 0.0);
        b_.assign(kmax + 1, 0.0);
        for (std::size_t k = 0; k <= kmax; ++k) {
            double sa = 0.0, sb = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                const double t = 2.0 * std::numbers::pi * static_cast<double>((k * i) % n) / static_cast<double>(n);
                sa += f[i] * std::cos(t);
                sb += f[i] * std::sin(t);
            }
            const double w = (k == 0 || 2 * k == n) ? 1.0 : 2.0;
            a_[k] = w * sa / static_cast<double>(n);
            b_[k] = (2 * k == n) ? 0.0 : w * sb / static_cast<double>(n);
        }
    }
    double operator()(double x) const {
        double acc = 0.0;
        const double t = 2.0 * std::numbers::pi * x / period_;
        for (std::size_t k = 0; k < a_.size(); ++k) acc += a_[k] * std::cos(k * t) + b_[k] * std::sin(k * t);
        return acc;
    }

private:
    double period_;
    std::vector<double> a_, b_;
};

void level_checks(VerifyReport& rep, const oracle::EdgeSpectrum& s, const std::string& label,
                  const std::vector<double>& targets, double tol) {
    for (double e : targets) {
        const int k = oracle::find_level(s, e, tol);
        VerifyCheck c;
        c.name = label + " level " + fmt(e);
        if (k < 0) {
            c.passed = false;
            double best = std::numeric_limits<double>::infinity();
            for (const auto& st : s.states) best = std::min(best, std::abs(st.energy - e));
            c.detail = "energy mismatch: nearest edge is " + fmt(best) + " away";
        } else {
            const auto& st = s.states[static_cast<std::size_t>(k)];
            c.detail = "found " + fmt(st.energy, 15) + ", nodes " + std::to_string(st.nodes) + ", period " +
                       oracle::to_string(st.periodicity) + ", gap " + std::to_string(st.gap_index);
        }
        rep.checks.push_back(std::move(c));
    }
}

void spectrum_notes(VerifyReport& rep, const oracle::EdgeSpectrum& s, const std::string& label) {
    std::ostringstream os;
    os << label << " edge spectrum:";
    for (const auto& st : s.states) os << " " << fmt(st.energy, 10) << "(" << st.nodes << ")";
    rep.notes.push_back(os.str());
}

int handle(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const ParseError& e) {
        err << "parse error: " << e.what() << "\n";
        return kUsage;
    } catch (const InvalidArgument& e) {
        err << "invalid argument: " << e.what() << "\n";
        return kUsage;
    } catch (const LocatedError& e) {
        err << "construction aborted: " << e.what() << "\n";
        return kVerifyFailed;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kVerifyFailed;
    }
}

}  // namespace

bool VerifyReport::passed() const {
    for (const auto& c : checks)
        if (!c.passed) return false;
    return true;
}

io::GridExport construct_export(const ConstructedSystem& sys, int grid) {
    io::GridExport g = base_export(sys, "construct", grid);
    const auto xs = grid_points(sys.period(), grid);
    std::vector<std::vector<double>> cols(io::construct_columns.size(), std::vector<double>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const auto v = sys.sample(xs[i]);
        const double row[] = {xs[i],     v.v_minus, v.v_plus,  v.w[0],    v.w[1],   v.w[2],
                              v.psi[0],  v.psi[1],  v.psi[2],  v.psi[3],  v.psi[4]};
        for (std::size_t c = 0; c < cols.size(); ++c) cols[c][i] = row[c];
    }
    for (std::size_t c = 0; c < cols.size(); ++c) g.add_column(io::construct_columns[c], std::move(cols[c]));
    return g;
}

io::GridExport razavy_example_export(const ConstructedSystem& sys, int grid, const PlotConstants& fc) {
    io::GridExport g = base_export(sys, "example", grid);
    g.text["example"] = "razavy";
    g.numbers["C0_minus"] = fc.c0_minus;
    g.numbers["C1_minus"] = fc.c1_minus;
    g.numbers["C2_minus"] = fc.c2_minus;
    g.numbers["C1_plus"] = fc.c1_plus;
    g.numbers["C2_plus"] = fc.c2_plus;
    const razavy::Reference ref(sys.energies().eps0);
    const double cs[] = {fc.c0_minus, fc.c1_minus, fc.c2_minus, fc.c1_plus, fc.c2_plus};
    const auto xs = grid_points(sys.period(), grid);
    const std::vector<std::string> quantities = {"V_minus", "V_plus", "W0", "W1", "W2",
                                                 "psi0_m",  "psi1_m", "psi2_m", "psi1_p", "psi2_p"};
    std::vector<std::vector<double>> pipe(10, std::vector<double>(xs.size())), closed = pipe;
    std::vector<double> u(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) {
        const double x = xs[i];
        const auto v = sys.sample(x);
        u[i] = sys.generator()(x);
        const double p[] = {v.v_minus, v.v_plus, v.w[0], v.w[1], v.w[2]};
        for (int k = 0; k < 5; ++k) pipe[static_cast<std::size_t>(k)][i] = p[k];
        for (int k = 0; k < 5; ++k) pipe[static_cast<std::size_t>(5 + k)][i] = cs[k] * v.psi[static_cast<std::size_t>(k)];
        closed[0][i] = ref.v_minus(x);
        closed[1][i] = ref.v_plus(x);
        for (int k = 0; k < 3; ++k) closed[static_cast<std::size_t>(2 + k)][i] = ref.w(x, k);
        for (int k = 0; k < 3; ++k) closed[static_cast<std::size_t>(5 + k)][i] = ref.psi_minus(x, k, cs[k]);
        for (int k = 1; k <= 2; ++k) closed[static_cast<std::size_t>(7 + k)][i] = ref.psi_plus(x, k, cs[2 + k]);
    }
    g.add_column("x", xs);
    g.add_column("U", std::move(u));
    for (std::size_t k = 0; k < 10; ++k) g.add_column(quantities[k], std::move(pipe[k]));
    for (std::size_t k = 0; k < 10; ++k) g.add_column("ref_" + quantities[k], std::move(closed[k]));
    return g;
}

VerifyReport verify_system(const ConstructedSystem& sys, int modes, double tol, double perturb) {
    VerifyReport rep;
    const double L = sys.period();
    const auto e = sys.energy_levels();
    if (modes < 32) rep.notes.push_back("warning: fewer than 32 harmonics may not resolve levels to 1e-6");
    const auto bump = [L, perturb](double x) { return perturb * std::cos(2.0 * std::numbers::pi * x / L); };

    const int count = 10;
    const auto vm = oracle::band_edge_spectrum([&](double x) { return sys.v_minus(x) + bump(x); }, L, modes, count);
    spectrum_notes(rep, vm, "V-");
    level_checks(rep, vm, "V-", {e[0], e[1], e[2]}, tol);

    std::optional<oracle::EdgeSpectrum> vp;
    try {
        vp = oracle::band_edge_spectrum([&](double x) { return sys.v_plus(x) + bump(x); }, L, modes, count);
    } catch (const VplusPole& ex) {
        rep.notes.push_back(std::string("V+ is singular on this branch, partner checks skipped: ") + ex.what());
    }
    if (vp) {
        spectrum_notes(rep, *vp, "V+");
        level_checks(rep, *vp, "V+", {e[1], e[2]}, tol);
    }

    // Constructed states against the oracle and the Schroedinger equation.
    const int n = 1024;
    for (State st : kAllStates) {
        const bool plus = st == State::Psi1Plus || st == State::Psi2Plus;
        if (plus && !vp) continue;
        std::vector<double> samples(n);
        for (int i = 0; i < n; ++i) samples[static_cast<std::size_t>(i)] = sys.psi(st, 2.0 * L * i / n);
        const auto pot = [&](double x) { return (plus ? sys.v_plus(x) : sys.v_minus(x)) + bump(x); };
        VerifyCheck r;
        r.name = std::string(state_name(st)) + " residual";
        const double res = oracle::residual(pot, samples, sys.energy(st), L);
        r.passed = res <= tol;
        r.detail = "max normalised residual " + fmt(res, 3);
        rep.checks.push_back(r);

        const auto& edges = plus ? *vp : vm;
        const int k = oracle::find_level(edges, sys.energy(st), tol);
        if (k < 0) continue;
        const auto& edge = edges.states[static_cast<std::size_t>(k)];
        VerifyCheck nodes;
        nodes.name = std::string(state_name(st)) + " nodes";
        int mine = -1;
        try {
            mine = oracle::count_nodes(samples) / 2;
        } catch (const AmbiguousNode&) {
        }
        const auto per = oracle::classify(samples);
        nodes.passed = mine == edge.nodes && per == edge.periodicity;
        nodes.detail = "constructed " + std::to_string(mine) + " per period (" + oracle::to_string(per) + "), oracle " +
                       std::to_string(edge.nodes) + " (" + oracle::to_string(edge.periodicity) + ")";
        rep.checks.push_back(nodes);
    }
    return rep;
}

VerifyReport verify_export(const io::GridExport& g, int modes, double tol, double perturb) {
    VerifyReport rep;
    if (!g.numbers.count("period")) throw InvalidArgument("export lacks the period");
    const double L = g.numbers.at("period");
    if (g.energies.size() != 3) throw InvalidArgument("export lacks the three energies");
    if (modes < 32) rep.notes.push_back("warning: fewer than 32 harmonics may not resolve levels to 1e-6");
    const auto bump = [L, perturb](double x) { return perturb * std::cos(2.0 * std::numbers::pi * x / L); };
    const Interpolant vm(g.column("V_minus"), L);
    const auto s = oracle::band_edge_spectrum([&](double x) { return vm(x) + bump(x); }, L, modes, 10);
    spectrum_notes(rep, s, "V-");
    level_checks(rep, s, "V-", g.energies, tol);
    const auto& vpc = g.column("V_plus");
    bool finite = true;
    for (double v : vpc) finite = finite && std::isfinite(v);
    if (finite) {
        const Interpolant vp(vpc, L);
        const auto sp = oracle::band_edge_spectrum([&](double x) { return vp(x) + bump(x); }, L, modes, 10);
        spectrum_notes(rep, sp, "V+");
        level_checks(rep, sp, "V+", {g.energies[1], g.energies[2]}, tol);
    } else {
        rep.notes.push_back("V+ column has poles, partner checks skipped");
    }
    rep.notes.push_back("residual checks need a generator; run verify with --u to include them");
    return rep;
}

int cmd_validate(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return handle(
        [&] {
            if (!c.u) throw UsageError("--u is required");
            const Expression ex = Expression::parse(*c.u);
            if (!c.eps0 || !c.eps1) throw UsageError("--eps0 and --eps1 are required");
            const auto report = check_admissibility(ex, *c.eps0, *c.eps1, c.period);
            print_report(report, out);
            return report.passed ? kOk : kValidationFailed;
        },
        err);
}

int cmd_construct(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return handle(
        [&] {
            require_grid(c.grid);
            auto g = admissible_generator(c, err);
            if (!g) return static_cast<int>(kValidationFailed);
            const auto sys = ConstructedSystem::build(*g);
            emit(construct_export(sys, c.grid), c, out);
            return static_cast<int>(kOk);
        },
        err);
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return handle(
        [&] {
            if (c.modes < oracle::min_harmonics)
                throw UsageError("--modes must be at least " + std::to_string(oracle::min_harmonics));
            VerifyReport rep;
            if (c.input) {
                rep = verify_export(io::read_export(*c.input), c.modes, c.tol, c.perturb);
            } else {
                auto g = admissible_generator(c, err);
                if (!g) return static_cast<int>(kValidationFailed);
                rep = verify_system(ConstructedSystem::build(*g), c.modes, c.tol, c.perturb);
            }
            for (const auto& n : rep.notes) out << n << "\n";
            for (const auto& ch : rep.checks)
                out << (ch.passed ? "pass  " : "FAIL  ") << ch.name << ": " << ch.detail << "\n";
            if (!rep.passed()) {
                for (const auto& ch : rep.checks)
                    if (!ch.passed) err << "verification failed: " << ch.name << " (" << ch.detail << ")\n";
                return static_cast<int>(kVerifyFailed);
            }
            out << "verified\n";
            return static_cast<int>(kOk);
        },
        err);
}

int cmd_example(const RunConfig& c, std::ostream& out, std::ostream& err) {
    return handle(
        [&] {
            if (c.example != "razavy") throw UsageError("unknown example '" + c.example + "' (available: razavy)");
            require_grid(c.grid);
            const double eps0 = c.eps0.value_or(1.0);
            const auto p = razavy::Params::from_eps0(eps0);
            if (c.eps1 && std::abs(*c.eps1 - p.eps1) > 1e-12)
                throw UsageError("the razavy example fixes eps1 = eps0 - 1/2");
            const GeneratingFunction g(Expression::parse(razavy::generator_source()), EnergyPair(p.eps0, p.eps1),
                                       2.0 * std::numbers::pi);
            const auto sys = ConstructedSystem::build(g);
            emit(razavy_example_export(sys, c.grid), c, out);
            return static_cast<int>(kOk);
        },
        err);
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Construct and verify periodic potentials with three explicitly known band-edge states", "qesforge"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(QES_VERSION));

    RunConfig cfg;
    std::string format = "csv";
    std::string u, out_path, input;
    double eps0 = 0.0, eps1 = 0.0;

    auto common = [&](CLI::App* sub) {
        sub->add_option("--u", u, "generating function U(x), e.g. \"4*eps0*eps1*sin(x)^2\"");
        sub->add_option("--eps0", eps0, "first level spacing (> 0)");
        sub->add_option("--eps1", eps1, "second level spacing (> 0)");
        sub->add_option("--period", cfg.period, "period L of U")->capture_default_str();
        sub->add_option("--grid", cfg.grid, "export grid size (>= 64)")->capture_default_str();
        sub->add_option("--modes", cfg.modes, "oracle harmonics")->capture_default_str();
        sub->add_option("--out", out_path, "output file (standard output when omitted)");
        sub->add_option("--format", format, "csv or json")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "verification tolerance")->capture_default_str();
    };
    auto* validate = app.add_subcommand("validate", "check that U admits the construction");
    auto* construct = app.add_subcommand("construct", "build the system and export it on a grid");
    auto* verify = app.add_subcommand("verify", "check the system against the independent spectral oracle");
    auto* example = app.add_subcommand("example", "export a built-in example next to its closed form");
    for (auto* s : {validate, construct, verify, example}) common(s);
    verify->add_option("--in", input, "verify an existing export instead of a generator");
    verify->add_option("--perturb", cfg.perturb, "add this multiple of cos(2 pi x / L) to the potentials");
    example->add_option("name", cfg.example, "example name (razavy)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::CallForVersion&) {
        out << QES_VERSION << "\n";
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }

    CLI::App* used = app.get_subcommands().front();
    if (used->count("--u")) cfg.u = u;
    if (used->count("--eps0")) cfg.eps0 = eps0;
    if (used->count("--eps1")) cfg.eps1 = eps1;
    if (used->count("--out")) cfg.out = out_path;
    if (used == verify && verify->count("--in")) cfg.input = input;
    try {
        cfg.format = io::parse_format(format);
    } catch (const InvalidArgument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    }
    if (used == validate) return cmd_validate(cfg, out, err);
    if (used == construct) return cmd_construct(cfg, out, err);
    if (used == verify) return cmd_verify(cfg, out, err);
    return cmd_example(cfg, out, err);
}

}  // namespace qes::cli

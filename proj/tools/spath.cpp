// spath: tabulates the group-kernel, spin-frame, propagator and Fock-space
// identity suites and emits machine-readable results.
//
// Exit codes: 0 all suites pass, 1 tolerance breach, 2 usage/config error.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "spath/fock.hpp"
#include "spath/kernels.hpp"
#include "spath/spin.hpp"

namespace {

using namespace spath;

struct UsageError {
    std::string message;
};

struct RunConfig {
    double tol = -1.0;  // < 0: per-command default
    int ell_max2 = 16;  // 2*ell_max
    int nodes = 64;
    std::uint64_t seed = 0;
    std::string format = "csv";
    std::string out;
    double tau = 0.5;
    int samples = 100;
    std::string reps = "scalar,dirac,vector";
    double grid_extent = 2.5;
    int grid_points = 5;
    int threads = 0;  // 0 = implementation default
};

struct Cell {
    std::string token;
    bool quoted = false;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

Cell num(double v) { return {fmt(v), false}; }
Cell num(int v) { return {std::to_string(v), false}; }
Cell str(const std::string& s) { return {s, true}; }

void write_table(const Table& t, const RunConfig& cfg) {
    std::ostringstream os;
    if (cfg.format == "csv") {
        for (std::size_t c = 0; c < t.columns.size(); ++c)
            os << t.columns[c] << (c + 1 < t.columns.size() ? "," : "\n");
        for (const auto& row : t.rows)
            for (std::size_t c = 0; c < row.size(); ++c)
                os << row[c].token << (c + 1 < row.size() ? "," : "\n");
    } else {
        os << "[\n";
        for (std::size_t r = 0; r < t.rows.size(); ++r) {
            os << "  {";
            for (std::size_t c = 0; c < t.rows[r].size(); ++c) {
                os << '"' << t.columns[c] << "\": ";
                if (t.rows[r][c].quoted)
                    os << '"' << t.rows[r][c].token << '"';
                else
                    os << t.rows[r][c].token;
                if (c + 1 < t.rows[r].size()) os << ", ";
            }
            os << "}" << (r + 1 < t.rows.size() ? "," : "") << "\n";
        }
        os << "]\n";
    }
    if (cfg.out.empty()) {
        std::cout << os.str();
    } else {
        std::ofstream f(cfg.out, std::ios::binary);
        if (!f) throw UsageError{"cannot open output file: " + cfg.out};
        f << os.str();
    }
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream f(path);
    if (!f) throw UsageError{"cannot open config file: " + path};
    std::string line;
    int lineno = 0;
    while (std::getline(f, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw UsageError{"config line " + std::to_string(lineno) + ": expected key = value"};
        auto trim = [](std::string s) {
            const auto a = s.find_first_not_of(" \t\r");
            const auto b = s.find_last_not_of(" \t\r");
            return a == std::string::npos ? std::string() : s.substr(a, b - a + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        try {
            if (key == "tol") cfg.tol = std::stod(value);
            else if (key == "ell_max") cfg.ell_max2 = 2 * std::stoi(value);
            else if (key == "twice_ell_max") cfg.ell_max2 = std::stoi(value);
            else if (key == "nodes") cfg.nodes = std::stoi(value);
            else if (key == "seed") cfg.seed = std::stoull(value);
            else if (key == "format") cfg.format = value;
            else if (key == "out") cfg.out = value;
            else if (key == "tau") cfg.tau = std::stod(value);
            else if (key == "samples") cfg.samples = std::stoi(value);
            else if (key == "reps") cfg.reps = value;
            else if (key == "grid_extent") cfg.grid_extent = std::stod(value);
            else if (key == "grid_points") cfg.grid_points = std::stoi(value);
            else throw UsageError{"unknown config key: " + key};
        } catch (const std::invalid_argument&) {
            throw UsageError{"config key " + key + ": bad value '" + value + "'"};
        }
    }
}

double default_tol(const RunConfig& cfg, double dflt) { return cfg.tol > 0 ? cfg.tol : dflt; }

// ---- characters ----

int cmd_characters(const RunConfig& cfg) {
    const double tol = default_tol(cfg, 1e-10);
    Table t;
    t.columns = {"twice_ell", "chi_at_0", "chi_at_half_pi", "chi_at_pi",
                 "chi_at_three_half_pi", "orthonormality_residual"};
    double worst = 0.0;
    for (int l2 = 0; l2 <= cfg.ell_max2; ++l2) {
        const SpinLabel ell{l2};
        double resid = 0.0;
        for (int k2 = 0; k2 <= cfg.ell_max2; ++k2) {
            const double target = (k2 == l2) ? 1.0 : 0.0;
            resid = std::max(resid, std::abs(character_orthonormality(
                                        ell, SpinLabel{k2}, cfg.nodes) -
                                    target));
        }
        worst = std::max(worst, resid);
        t.rows.push_back({num(l2), num(character_class(ell, 0.0)),
                          num(character_class(ell, 0.5 * M_PI)),
                          num(character_class(ell, M_PI)),
                          num(character_class(ell, 1.5 * M_PI)), num(resid)});
    }
    write_table(t, cfg);
    if (worst > tol) {
        std::cerr << "characters: orthonormality residual " << fmt(worst) << " exceeds "
                  << fmt(tol) << "\n";
        return 1;
    }
    return 0;
}

// ---- kernel ----

int cmd_kernel(const RunConfig& cfg) {
    const double tol = default_tol(cfg, 1e-8);
    const SpinLabel lmax{cfg.ell_max2};
    const cplx lam_e(0.0, -cfg.tau);  // Euclidean lambda = -i tau
    Table t;
    t.columns = {"theta",      "su2_re",     "su2_im",   "semigroup_residual",
                 "so4_factorization_residual", "tail_bound"};
    double worst_semi = 0.0, worst_fact = 0.0;
    const double tail = su2_kernel_tail_bound(cfg.tau, lmax);
    for (int i = 0; i < 8; ++i) {
        const double theta = 2.0 * M_PI * (i + 0.5) / 8.0;
        const cplx val = su2_kernel_class(theta, lam_e, lmax);
        const cplx half(0.0, -0.5 * cfg.tau);
        const cplx conv = haar_class_convolution(
            [&](double th) { return su2_kernel_class(th, half, lmax); },
            [&](double th) { return su2_kernel_class(th, half, lmax); }, theta, cfg.nodes);
        const double semi = std::abs(conv - val);

        // factorization at (theta, golden-angle partner)
        const double theta_b = std::fmod(theta * 0.6180339887498949, 2.0 * M_PI);
        const SU2Element ba = su2_exp({{theta, 0.0, 0.0}});
        const SU2Element bb = su2_exp({{0.0, theta_b, 0.0}});
        const cplx so4 = so4_kernel({ba, bb}, lam_e, lmax);
        const cplx prod = su2_kernel(ba, lam_e, lmax) * su2_kernel(bb, lam_e, lmax);
        const double fact = std::abs(so4 - prod);

        worst_semi = std::max(worst_semi, semi);
        worst_fact = std::max(worst_fact, fact);
        t.rows.push_back(
            {num(theta), num(val.real()), num(val.imag()), num(semi), num(fact), num(tail)});
    }
    write_table(t, cfg);
    if (worst_semi > tol || worst_fact > 1e-12) {
        std::cerr << "kernel: residuals exceed tolerance (semigroup " << fmt(worst_semi)
                  << ", factorization " << fmt(worst_fact) << ")\n";
        return 1;
    }
    return 0;
}

// ---- spin-check ----

std::vector<RepKind> parse_reps(const std::string& spec) {
    std::vector<RepKind> kinds;
    std::stringstream ss(spec);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item == "scalar") kinds.push_back(RepKind::scalar);
        else if (item == "dirac") kinds.push_back(RepKind::dirac_spinor);
        else if (item == "vector") kinds.push_back(RepKind::vector);
        else throw UsageError{"unknown rep: " + item};
    }
    if (kinds.empty()) throw UsageError{"empty reps list"};
    return kinds;
}

const char* rep_name(RepKind k) {
    switch (k) {
        case RepKind::scalar: return "scalar";
        case RepKind::dirac_spinor: return "dirac";
        default: return "vector";
    }
}

LorentzTransform random_lorentz(HaarSampler& sampler) {
    const SU2Element u = sampler.sample();
    const double vx = sampler.gaussian() * 0.5, vy = sampler.gaussian() * 0.5,
                 vz = sampler.gaussian() * 0.5;
    const FourVector n{std::sqrt(1.0 + vx * vx + vy * vy + vz * vz), vx, vy, vz};
    return LorentzTransform::from_rotation(u) * LorentzTransform::from_boost_to(n);
}

UnitTimelike random_unit_timelike(HaarSampler& sampler) {
    return UnitTimelike::from_spatial(sampler.gaussian(), sampler.gaussian(),
                                      sampler.gaussian());
}

int cmd_spin_check(const RunConfig& cfg) {
    const double tol = default_tol(cfg, 1e-9);
    Table t;
    t.columns = {"rep",          "max_c10",      "max_c11",       "max_orthonormality",
                 "max_projector", "max_u_v_match", "pass"};
    bool all_pass = true;
    for (const RepKind kind : parse_reps(cfg.reps)) {
        const auto& rep = LorentzRepresentation::get(kind);
        HaarSampler sampler(cfg.seed);
        double c10 = 0.0, c11 = 0.0, ortho = 0.0, proj = 0.0, uv = 0.0;
        for (int i = 0; i < cfg.samples; ++i) {
            const LorentzTransform lam = random_lorentz(sampler);
            const UnitTimelike n = random_unit_timelike(sampler);
            c10 = std::max(c10, covariance_residual_u(rep, lam, n));
            c11 = std::max(c11, covariance_residual_v(rep, lam, n));
            const SpinFrame frame = build_spin_frame(rep, n);
            const int ds = rep.twice_j + 1;
            ortho = std::max(ortho, (special_adjoint(rep, frame.u) * frame.u -
                                     Eigen::MatrixXcd::Identity(ds, ds))
                                        .cwiseAbs()
                                        .maxCoeff());
            proj = std::max(proj, (frame.projector * frame.projector - frame.projector)
                                      .cwiseAbs()
                                      .maxCoeff());
            uv = std::max(uv, (frame.v * special_adjoint(rep, frame.v) - frame.projector)
                                  .cwiseAbs()
                                  .maxCoeff());
        }
        const bool pass = c10 < tol && c11 < tol && ortho < tol && proj < tol && uv < tol;
        all_pass = all_pass && pass;
        t.rows.push_back({str(rep_name(kind)), num(c10), num(c11), num(ortho), num(proj),
                          num(uv), str(pass ? "true" : "false")});
    }
    write_table(t, cfg);
    if (!all_pass) {
        std::cerr << "spin-check: residual exceeds tolerance " << fmt(tol) << "\n";
        return 1;
    }
    return 0;
}

// ---- propagator ----

int cmd_propagator(const RunConfig& cfg) {
    const double tol = default_tol(cfg, 1e-3);
    const double m = 1.0;
    Table t;
    t.columns = {"t",        "r",        "lightcone_flag", "delta_re",  "delta_im",
                 "dplus_re", "dplus_im", "dminus_re",      "dminus_im", "decomposition_residual"};
    double worst = 0.0;
    bool monotone = true;
    double prev_spacelike_mag = std::numeric_limits<double>::infinity();
    const int np = cfg.grid_points;
    for (int i = 0; i < 2 * np + 1; ++i) {
        // time scan through zero at fixed r, plus a spacelike r scan row
        const double tv = -cfg.grid_extent + i * (2.0 * cfg.grid_extent / (2 * np));
        const double r = 0.4;
        const FourVector dx{tv, r, 0.0, 0.0};
        const double xi = minkowski_dot(dx, dx);
        if (std::abs(xi) < 1e-6) {
            t.rows.push_back({num(tv), num(r), str("lightcone"), num(0.0), num(0.0), num(0.0),
                              num(0.0), num(0.0), num(0.0), num(0.0)});
            continue;
        }
        const cplx delta = feynman_propagator_position(dx, m, 1e-3);
        const cplx dplus = onshell_kernel(dx, m, +1);
        const cplx dminus = onshell_kernel(dx, m, -1);
        const cplx decomposition = (tv > 0) ? dplus : (tv < 0 ? dminus : delta);
        const double resid = std::abs(delta - decomposition);
        if (xi < 0.0) worst = std::max(worst, resid);
        t.rows.push_back({num(tv), num(r), str("ok"), num(delta.real()), num(delta.imag()),
                          num(dplus.real()), num(dplus.imag()), num(dminus.real()),
                          num(dminus.imag()), num(resid)});
    }
    for (int i = 1; i <= np; ++i) {
        const double r = i * (cfg.grid_extent / np) + 1.0;
        const FourVector dx{0.0, r, 0.0, 0.0};
        const cplx delta = feynman_propagator_position(dx, m, 1e-3);
        if (std::abs(delta) >= prev_spacelike_mag) monotone = false;
        prev_spacelike_mag = std::abs(delta);
        const cplx dplus = onshell_kernel(dx, m, +1);
        const cplx dminus = onshell_kernel(dx, m, -1);
        const double resid = std::abs(delta - dplus);
        t.rows.push_back({num(0.0), num(r), str("ok"), num(delta.real()), num(delta.imag()),
                          num(dplus.real()), num(dplus.imag()), num(dminus.real()),
                          num(dminus.imag()), num(resid)});
    }
    write_table(t, cfg);
    if (worst > tol || !monotone) {
        std::cerr << "propagator: decomposition residual " << fmt(worst)
                  << (monotone ? "" : " (spacelike decay not monotone)") << "\n";
        return 1;
    }
    return 0;
}

// ---- fock ----

// Independent recursive enumeration used as the command's reference value.
cplx naive_sum(const MultiParticleLabel& bra, const MultiParticleLabel& ket, double eps,
               std::vector<int>& chosen, std::vector<bool>& used, int depth) {
    const int n = int(ket.size());
    if (depth == n) {
        cplx term = 1.0;
        int swaps = 0;
        for (int j = 0; j < n; ++j) {
            const auto& bl = bra.legs[chosen[j]];
            const auto& kl = ket.legs[j];
            if (bl.spec.type_index != kl.spec.type_index) return 0.0;
            const auto full = nonscalar_propagator(kl.spec.representation(),
                                                   bl.position - kl.position, kl.spec.mass, eps);
            term *= full(bl.component, kl.component);
        }
        for (int a = 0; a < n; ++a)
            for (int b = a + 1; b < n; ++b)
                if (ket.legs[a].spec.statistics == Statistics::fermion &&
                    ket.legs[b].spec.statistics == Statistics::fermion &&
                    chosen[a] > chosen[b])
                    ++swaps;
        return (swaps % 2 ? -1.0 : 1.0) * term;
    }
    cplx total = 0.0;
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        used[i] = true;
        chosen[depth] = i;
        total += naive_sum(bra, ket, eps, chosen, used, depth + 1);
        used[i] = false;
    }
    return total;
}

cplx naive_inner_product(const MultiParticleLabel& bra, const MultiParticleLabel& ket,
                         double eps) {
    std::vector<int> chosen(ket.size());
    std::vector<bool> used(ket.size(), false);
    return naive_sum(bra, ket, eps, chosen, used, 0);
}

int cmd_fock(const RunConfig& cfg) {
    const double tol = default_tol(cfg, 1e-12);
    Table t;
    t.columns = {"check", "value", "reference", "residual", "pass"};
    bool all_pass = true;
    const auto add_row = [&](const std::string& name, cplx value, cplx reference,
                             double resid, double row_tol) {
        const bool pass = resid <= row_tol;
        all_pass = all_pass && pass;
        t.rows.push_back({str(name), num(std::abs(value)), num(std::abs(reference)),
                          num(resid), str(pass ? "true" : "false")});
    };

    const auto fermion = ParticleSpec::make(1, RepKind::dirac_spinor, 1.0,
                                            Statistics::fermion);
    const auto boson = ParticleSpec::make(2, RepKind::scalar, 1.0, Statistics::boson);

    // N = 2 identical fermions: antisymmetry under bra-leg exchange
    {
        const auto bra = MultiParticleLabel::make({{{1.1, 0.2, 0.1, 0.0}, fermion, 0},
                                                   {{2.3, -0.4, 0.3, 0.2}, fermion, 1}});
        const auto bra_swapped = MultiParticleLabel::make({bra.legs[1], bra.legs[0]});
        const auto ket = MultiParticleLabel::make({{{0.0, 0.1, -0.2, 0.1}, fermion, 2},
                                                   {{0.2, 0.9, 0.4, -0.3}, fermion, 3}});
        const cplx a = multiparticle_inner_product(bra, ket).value;
        const cplx b = multiparticle_inner_product(bra_swapped, ket).value;
        add_row("fermion_antisymmetry_n2", a, -b, std::abs(a + b), tol);
    }

    // N = 4 mixed statistics vs the naive enumeration
    {
        const auto bra = MultiParticleLabel::make({{{2.1, 0.2, 0.1, 0.0}, fermion, 0},
                                                   {{2.4, -0.3, 0.2, 0.1}, fermion, 1},
                                                   {{2.2, 0.5, -0.1, 0.3}, boson, 0},
                                                   {{2.6, 0.0, 0.4, -0.2}, boson, 0}});
        const auto ket = MultiParticleLabel::make({{{0.1, -0.1, 0.3, 0.2}, fermion, 2},
                                                   {{0.0, 0.4, -0.2, 0.0}, fermion, 1},
                                                   {{0.3, 0.1, 0.1, -0.1}, boson, 0},
                                                   {{0.2, -0.3, 0.0, 0.4}, boson, 0}});
        const cplx got = multiparticle_inner_product(bra, ket).value;
        const cplx ref = naive_inner_product(bra, ket, 1e-3);
        add_row("oracle_match_n4", got, ref, std::abs(got - ref), tol);
    }

    // sinc peak at momentum balance
    {
        const auto spec = ParticleSpec::make(3, RepKind::scalar, 1.0, Statistics::boson);
        const auto g = VertexSpec::make({1, 1}, {1}, {cplx(1.0)});
        const VertexBox box{8.0, 8.0};
        double best_q = 0.0, best_mag = -1.0;
        const double q_in = 0.3;
        for (int i = 0; i <= 24; ++i) {
            const double q = i * (2.0 * q_in) / 24.0;
            const std::vector<VertexLeg> in{{{q_in, 0, 0}, spec, 0, Species::particle},
                                            {{q_in, 0, 0}, spec, 0, Species::particle}};
            const std::vector<VertexLeg> out{{{2.0 * q_in - q, 0, 0}, spec, 0,
                                              Species::particle}};
            const double mag = std::abs(vertex_amplitude_first_order(in, out, g, box));
            if (mag > best_mag) {
                best_mag = mag;
                best_q = q;
            }
        }
        // peak expected at q = 0 (momentum balance), one grid cell = 0.025
        add_row("sinc_peak_at_balance", cplx(best_q), cplx(0.0), std::abs(best_q),
                2.0 * q_in / 24.0 + 1e-12);
    }

    write_table(t, cfg);
    if (!all_pass) {
        std::cerr << "fock: check failed\n";
        return 1;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "spath: spacetime-path kernels, spin frames, propagators and Fock products.\n"
        "Suites print one table (csv or json); exit 0 = pass, 1 = tolerance breach,\n"
        "2 = usage error. SPATH_THREADS caps internal parallelism (current\n"
        "implementation evaluates serially)."};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* tenv = std::getenv("SPATH_THREADS")) cfg.threads = std::atoi(tenv);

    std::string config_path;
    app.add_option("--config", config_path, "key = value config file");
    app.add_option("--out", cfg.out, "output path (default stdout)");
    app.add_option("--format", cfg.format, "csv|json")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--seed", cfg.seed, "random seed (default 0)");
    app.add_option("--ell-max", cfg.ell_max2,
                   "character-sum truncation, as 2*ell (default 16)");
    app.add_option("--tol", cfg.tol, "tolerance override");
    app.add_option("--nodes", cfg.nodes, "quadrature nodes (default 64)");
    app.add_option("--tau", cfg.tau, "Euclidean path-parameter interval (kernel)");
    app.add_option("--samples", cfg.samples, "random samples (spin-check)");
    app.add_option("--reps", cfg.reps, "comma list: scalar,dirac,vector (spin-check)");
    app.add_option("--grid-extent", cfg.grid_extent, "propagator grid extent");
    app.add_option("--grid-points", cfg.grid_points, "propagator grid points per branch");

    auto* characters = app.add_subcommand("characters", "character tables + orthonormality");
    auto* kernel = app.add_subcommand("kernel", "Euclidean SU(2)/SO(4) kernel suite");
    auto* spin_check = app.add_subcommand("spin-check", "spin-frame covariance residuals");
    auto* propagator = app.add_subcommand("propagator", "propagator decomposition table");
    auto* fock = app.add_subcommand("fock", "multiparticle product checks");

    try {
        app.parse(argc, argv);
        if (!config_path.empty()) {
            // config file fills values; explicitly passed flags win
            RunConfig merged = cfg;
            load_config_file(config_path, merged);
            merged.threads = cfg.threads;
            auto flag_wins = [&](const char* name, auto member) {
                if (app.count(name) > 0) merged.*member = cfg.*member;
            };
            flag_wins("--tol", &RunConfig::tol);
            flag_wins("--ell-max", &RunConfig::ell_max2);
            flag_wins("--nodes", &RunConfig::nodes);
            flag_wins("--seed", &RunConfig::seed);
            flag_wins("--format", &RunConfig::format);
            flag_wins("--out", &RunConfig::out);
            flag_wins("--tau", &RunConfig::tau);
            flag_wins("--samples", &RunConfig::samples);
            flag_wins("--reps", &RunConfig::reps);
            flag_wins("--grid-extent", &RunConfig::grid_extent);
            flag_wins("--grid-points", &RunConfig::grid_points);
            cfg = merged;
        }
        if (characters->parsed()) return cmd_characters(cfg);
        if (kernel->parsed()) return cmd_kernel(cfg);
        if (spin_check->parsed()) return cmd_spin_check(cfg);
        if (propagator->parsed()) return cmd_propagator(cfg);
        if (fock->parsed()) return cmd_fock(cfg);
        return 2;
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.message << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "orbitkit/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <numbers>
#include <numeric>
#include <sstream>
#include <thread>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"
#include "orbitkit/closure.hpp"
#include "orbitkit/error.hpp"
#include "orbitkit/ladder.hpp"
#include "orbitkit/orbit.hpp"
#include "orbitkit/orbit_io.hpp"
#include "orbitkit/potential.hpp"
#include "orbitkit/radial.hpp"
#include "orbitkit/runge_lenz.hpp"
#include "orbitkit/wkb.hpp"

namespace orbitkit::cli {

using Json = nlohmann::ordered_json;

namespace {

constexpr std::pair<Command, const char*> command_names[] = {
    {Command::orbit, "orbit"},       {Command::closure, "closure"}, {Command::bertrand_scan, "bertrand-scan"},
    {Command::spectrum, "spectrum"}, {Command::ladder, "ladder"},   {Command::wkb, "wkb"},
    {Command::runge_lenz, "runge-lenz"},
};

std::string fmt(double x, int digits = 10) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", digits, x);
    return buf;
}

// ---- argument and config handling --------------------------------------

const char* const known_keys[] = {"command", "a",    "nu",           "b",       "lambda",   "L",
                                  "E",       "kappa", "l",           "nr",      "direction", "t_end",
                                  "tol",     "tol_rational", "max_den", "grid_n", "r_max",   "nu_list",
                                  "eccentricities", "output", "format", "chi_output"};

double as_real(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) {
        const std::string s = v.get<std::string>();
        try {
            std::size_t used = 0;
            const double x = std::stod(s, &used);
            if (used == s.size()) return x;
        } catch (const std::exception&) {
        }
    }
    throw UsageError(std::string("field '") + key + "' must be a real number");
}

long long as_integer(const Json& j, const char* key) {
    const double x = as_real(j, key);
    if (std::floor(x) != x || std::abs(x) > 9e15) throw UsageError(std::string("field '") + key + "' must be an integer");
    return static_cast<long long>(x);
}

std::string as_text(const Json& j, const char* key) {
    const Json& v = j.at(key);
    if (v.is_string()) return v.get<std::string>();
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    if (v.is_number()) return format_real(v.get<double>());
    throw UsageError(std::string("field '") + key + "' must be a string");
}

std::vector<double> as_real_list(const Json& j, const char* key) {
    const Json& v = j.at(key);
    std::vector<double> out;
    if (v.is_array()) {
        for (const auto& x : v) {
            if (!x.is_number()) throw UsageError(std::string("field '") + key + "' must hold numbers");
            out.push_back(x.get<double>());
        }
    } else if (v.is_string()) {
        std::stringstream ss(v.get<std::string>());
        std::string item;
        while (std::getline(ss, item, ',')) {
            Json one = {{"x", item}};
            out.push_back(as_real(one, "x"));
        }
    } else {
        throw UsageError(std::string("field '") + key + "' must be a list");
    }
    if (out.empty()) throw UsageError(std::string("field '") + key + "' is empty");
    return out;
}

Json read_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw UsageError("cannot read config file " + path.string());
    Json doc;
    try {
        doc = Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw UsageError("config file " + path.string() + " is not valid JSON: " + e.what());
    }
    if (!doc.is_object()) throw UsageError("config file must hold a single JSON object");
    return doc;
}

RunConfig from_json(const Json& j) {
    for (const auto& [key, value] : j.items()) {
        (void)value;
        if (std::none_of(std::begin(known_keys), std::end(known_keys), [&](const char* k) { return key == k; }))
            throw UsageError("unknown field '" + key + "'");
    }

    RunConfig c;
    if (!j.contains("command")) throw UsageError("no command given");
    const auto cmd = parse_command(as_text(j, "command"));
    if (!cmd) throw UsageError("unknown command '" + as_text(j, "command") + "'");
    c.command = *cmd;

    auto real_opt = [&](const char* key, std::optional<double>& dst) {
        if (j.contains(key)) dst = as_real(j, key);
    };
    real_opt("a", c.a);
    real_opt("nu", c.nu);
    real_opt("b", c.b);
    real_opt("lambda", c.lambda);
    real_opt("L", c.L);
    real_opt("E", c.E);
    real_opt("tol", c.tol);
    real_opt("tol_rational", c.tol_rational);
    real_opt("r_max", c.r_max);
    if (j.contains("t_end")) c.t_end = as_real(j, "t_end");
    if (j.contains("kappa")) c.kappa = parse_kappa(as_text(j, "kappa"));
    if (j.contains("l")) {
        const long long l = as_integer(j, "l");
        if (l < 0 || l > 1000) throw UsageError("l must be a nonnegative integer");
        c.l = static_cast<int>(l);
    }
    if (j.contains("nr")) c.nr = parse_nr_range(as_text(j, "nr"));
    if (j.contains("direction")) {
        const std::string d = as_text(j, "direction");
        if (d != "up" && d != "down") throw UsageError("direction must be 'up' or 'down'");
        c.up = d == "up";
    }
    if (j.contains("max_den")) {
        const long long m = as_integer(j, "max_den");
        if (m < 1) throw UsageError("max_den must be at least 1");
        c.max_den = m;
    }
    if (j.contains("grid_n")) {
        const long long n = as_integer(j, "grid_n");
        if (n < 16) throw UsageError("grid_n must be at least 16");
        c.grid_n = static_cast<std::size_t>(n);
    }
    if (j.contains("nu_list")) c.nu_list = as_real_list(j, "nu_list");
    if (j.contains("eccentricities")) c.eccentricities = as_real_list(j, "eccentricities");
    if (j.contains("output")) c.output = as_text(j, "output");
    if (j.contains("chi_output")) c.chi_output = as_text(j, "chi_output");
    if (j.contains("format")) {
        const std::string f = as_text(j, "format");
        if (f == "csv")
            c.format = Format::csv;
        else if (f == "json")
            c.format = Format::json;
        else
            throw UsageError("format must be 'csv' or 'json'");
    }

    // Cross-field validation.
    if (c.lambda && (c.a || c.nu || c.b)) throw UsageError("--lambda cannot be combined with --a/--nu/--b");
    const bool needs_potential = c.command != Command::bertrand_scan;
    if (needs_potential && !c.lambda && !(c.a && c.nu)) throw UsageError("potential needs --a and --nu (or --lambda)");
    if (c.L && c.kappa) throw UsageError("give either --L or --kappa, not both");
    if (c.tol && !(*c.tol > 0.0)) throw UsageError("tol must be positive");
    if (c.tol_rational && !(*c.tol_rational > 0.0)) throw UsageError("tol_rational must be positive");
    if (!(c.t_end > 0.0)) throw UsageError("t_end must be positive");
    if (c.r_max && !(*c.r_max > 0.0)) throw UsageError("r_max must be positive");
    if (c.L && !(*c.L > 0.0)) throw UsageError("L must be positive");

    switch (c.command) {
        case Command::orbit:
        case Command::closure:
        case Command::runge_lenz:
            if (!c.L && !c.kappa) throw UsageError(to_string(c.command) + " needs --L or --kappa");
            if (!c.E) throw UsageError(to_string(c.command) + " needs --E");
            break;
        case Command::ladder:
            if (c.nr && c.nr->first != c.nr->second) throw UsageError("ladder acts on a single n_r");
            break;
        case Command::spectrum:
            if (c.chi_output && c.nr && c.nr->first != c.nr->second)
                throw UsageError("--chi-output needs a single n_r");
            break;
        case Command::bertrand_scan:
            for (double e : c.eccentricities)
                if (!(e > 0.0 && e < 1.0)) throw UsageError("eccentricities must lie in (0, 1)");
            break;
        case Command::wkb:
            break;
    }
    if (c.chi_output && c.command != Command::spectrum && c.command != Command::ladder)
        throw UsageError("--chi-output applies to spectrum and ladder only");
    return c;
}

unsigned threads_from_environment() {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ORBITKIT_THREADS")) {
        const std::string s(env);
        char* end = nullptr;
        const long v = std::strtol(s.c_str(), &end, 10);
        if (s.empty() || *end != '\0' || v < 1) throw UsageError("ORBITKIT_THREADS must be a positive integer");
        threads = std::min(threads, static_cast<unsigned>(v));
    }
    return threads;
}

// ---- output ---------------------------------------------------------------

using Cell = std::variant<double, long long, bool, std::string>;

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
};

struct Output {
    std::variant<std::monostate, Table, Json> data;
    std::string summary;
    Format default_format = Format::csv;
    // Only used for orbit CSV, which has its own emitter.
    std::function<void(std::ostream&)> csv_override;
};

std::string cell_text(const Cell& c) {
    return std::visit(
        [](const auto& v) -> std::string {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>)
                return format_real(v);
            else if constexpr (std::is_same_v<T, long long>)
                return std::to_string(v);
            else if constexpr (std::is_same_v<T, bool>)
                return v ? "true" : "false";
            else
                return v;
        },
        c);
}

Json cell_json(const Cell& c) {
    return std::visit(
        [](const auto& v) -> Json {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
                if (!std::isfinite(v)) return nullptr;
            }
            return v;
        },
        c);
}

void write_csv(const Table& t, std::ostream& out) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell_text(row[i]);
        out << '\n';
    }
}

Json table_json(const Table& t) {
    Json arr = Json::array();
    for (const auto& row : t.rows) {
        Json obj = Json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = cell_json(row[i]);
        arr.push_back(std::move(obj));
    }
    return arr;
}

// Flat key/value CSV for report objects; nested objects become key_sub.
void flatten(const Json& j, const std::string& prefix, Table& t, std::vector<Cell>& row) {
    for (const auto& [key, v] : j.items()) {
        const std::string name = prefix.empty() ? key : prefix + "_" + key;
        if (v.is_object()) {
            flatten(v, name, t, row);
            continue;
        }
        t.columns.push_back(name);
        if (v.is_boolean())
            row.emplace_back(v.get<bool>());
        else if (v.is_number_integer())
            row.emplace_back(v.get<long long>());
        else if (v.is_number())
            row.emplace_back(v.get<double>());
        else if (v.is_null())
            row.emplace_back(std::string());
        else
            row.emplace_back(v.is_string() ? v.get<std::string>() : v.dump());
    }
}

void write_file(const std::filesystem::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream out(path);
    if (!out) throw DomainError("io", "cannot open " + path.string() + " for writing");
    body(out);
    out.flush();
    if (!out) throw DomainError("io", "failed writing " + path.string());
}

void emit(const Output& o, const RunConfig& c) {
    if (!c.output) return;
    const Format f = c.format.value_or(o.default_format);
    write_file(*c.output, [&](std::ostream& out) {
        if (std::holds_alternative<Table>(o.data)) {
            const Table& t = std::get<Table>(o.data);
            if (f == Format::json) {
                out << table_json(t).dump(2) << '\n';
            } else if (o.csv_override) {
                o.csv_override(out);
            } else {
                write_csv(t, out);
            }
        } else if (std::holds_alternative<Json>(o.data)) {
            const Json& j = std::get<Json>(o.data);
            if (f == Format::json) {
                out << j.dump(2) << '\n';
            } else {
                Table t;
                t.rows.emplace_back();
                flatten(j, "", t, t.rows.back());
                write_csv(t, out);
            }
        }
    });
}

void write_chi(const std::filesystem::path& path, const GridFunction& chi) {
    write_file(path, [&](std::ostream& out) {
        out << "r,chi\n";
        for (std::size_t i = 0; i < chi.values.size(); ++i)
            out << format_real(chi.grid.r(i)) << ',' << format_real(chi.values[i]) << '\n';
    });
}

// ---- commands -------------------------------------------------------------

CombinedPotential make_potential(const RunConfig& c) {
    if (c.lambda) return CombinedPotential::alkali(*c.lambda);
    return {*c.a, *c.nu, c.b.value_or(0.0)};
}

double resolve_L(const CombinedPotential& p, const RunConfig& c) {
    if (c.L) return *c.L;
    if (c.kappa->q == c.kappa->p)
        throw UsageError("kappa = 1 means b = 0 and leaves L free; pass --L instead");
    return angular_momentum_for_kappa(p, c.kappa->value());
}

RadialGrid grid_for(const CombinedPotential& p, const RunConfig& c, double l_prime, int max_n_r) {
    RadialGrid g = default_grid(p, l_prime, max_n_r);
    if (c.r_max) g.r_max = *c.r_max;
    if (c.grid_n) g.n_points = *c.grid_n;
    if (!(g.r_max > g.r_min)) throw UsageError("r_max must exceed r_min = " + fmt(g.r_min));
    return g;
}

Output run_orbit(const RunConfig& c) {
    const CombinedPotential p = make_potential(c);
    const double L = resolve_L(p, c);
    const OrbitState start = pericenter_start(p, L, *c.E);
    IntegrationOptions opt;
    opt.rtol = c.tol.value_or(1e-10);
    opt.atol = opt.rtol * 1e-2;
    auto traj = std::make_shared<OrbitTrajectory>(integrate_orbit(p, start, c.t_end, opt));

    Output o;
    Table t;
    t.columns = {"t", "r", "theta", "x", "y", "p_r", "E_rel_drift"};
    const double scale = traj->E0 != 0.0 ? std::abs(traj->E0) : 1.0;
    for (const auto& s : traj->states)
        t.rows.push_back({s.t, s.r, s.theta, s.r * std::cos(s.theta), s.r * std::sin(s.theta), s.p_r,
                          std::abs(orbit_energy(p, s) - traj->E0) / scale});
    o.data = std::move(t);
    o.csv_override = [p, traj](std::ostream& out) { emit_orbit_csv(p, *traj, out); };
    o.summary = "orbit: " + std::to_string(traj->states.size()) + " states to t=" + fmt(traj->final_state.t) + ", " +
                std::to_string(traj->pericenters.size()) + " pericenters, L=" + fmt(L) +
                ", max relative energy drift " + fmt(traj->max_energy_drift, 3);
    return o;
}

Output run_closure(const RunConfig& c) {
    const CombinedPotential p = make_potential(c);
    const double L = resolve_L(p, c);
    ClosureOptions opt;
    opt.tol_rational = c.tol_rational.value_or(opt.tol_rational);
    opt.max_denominator = c.max_den;
    opt.integration_tol = c.tol.value_or(opt.integration_tol);
    const ClosureReport r = closure_analysis(p, L, *c.E, opt);

    Json j;
    j["kappa"] = r.kappa;
    j["beta"] = r.beta;
    j["beta_kappa"] = r.beta_kappa;
    j["rational"] = r.rational ? Json{{"p", r.rational->p}, {"q", r.rational->q}} : Json(nullptr);
    j["closed"] = r.closed;
    j["period_revolutions"] = r.period_revolutions ? Json(*r.period_revolutions) : Json(nullptr);
    j["numeric_gap"] = r.numeric_gap ? Json(*r.numeric_gap) : Json(nullptr);
    j["frequency_ratio"] = r.frequency_ratio;

    Output o;
    o.default_format = Format::json;
    o.data = std::move(j);
    std::string verdict;
    if (r.closed)
        verdict = "closed after " + std::to_string(*r.period_revolutions) + " revolutions (gap " +
                  fmt(*r.numeric_gap, 3) + ")";
    else if (r.rational)
        verdict = "not closed within " + std::to_string(r.rational->p) + " revolutions (gap " +
                  fmt(r.numeric_gap.value_or(NAN), 3) + ")";
    else
        verdict = "not closed (no rational with denominator <= " + std::to_string(c.max_den) + ")";
    o.summary = "closure: frequency ratio " + fmt(r.frequency_ratio, 12) +
                (r.rational ? " ~ " + std::to_string(r.rational->q) + "/" + std::to_string(r.rational->p) : "") +
                ", " + verdict;
    return o;
}

Output run_scan(const RunConfig& c) {
    ScanOptions opt;
    if (c.a) opt.a_magnitude = std::abs(*c.a);
    if (c.tol) opt.integration_tol = *c.tol;
    if (c.tol_rational) opt.tol = *c.tol_rational;
    opt.max_denominator = c.max_den;
    opt.threads = c.threads;
    const double b = c.lambda ? -*c.lambda : c.b.value_or(0.0);
    const BertrandScan scan = bertrand_scan(c.nu_list, c.eccentricities, b, opt);

    Output o;
    Table t;
    t.columns = {"nu", "b", "L", "E", "apsidal_angle", "closed"};
    for (const auto& s : scan.samples) t.rows.push_back({s.nu, s.b, s.L, s.E, s.apsidal_angle, s.closed});
    o.data = std::move(t);
    std::string list;
    for (double nu : scan.closed_exponents()) list += (list.empty() ? "" : ", ") + fmt(nu);
    o.summary = "bertrand-scan: closed for all sampled eccentricities: nu = {" + list + "}";
    return o;
}

bool has_closed_form(const CombinedPotential& p) { return p.is_coulomb_like() || p.is_harmonic_like(); }

double closed_form_energy(const CombinedPotential& p, double l_prime, int n_r) {
    if (p.is_coulomb_like()) return -p.a() * p.a() / (2.0 * std::pow(n_r + l_prime + 1.0, 2));
    return std::sqrt(2.0 * p.a()) * (2.0 * n_r + l_prime + 1.5);
}

Output run_spectrum(const RunConfig& c) {
    const CombinedPotential p = make_potential(c);
    p.require_stable();
    const auto [lo, hi] = c.nr.value_or(std::pair{0, 4});
    const double l_prime = effective_l(c.l, p.b());
    const RadialProblem problem(p, c.l, grid_for(p, c, l_prime, hi));
    const bool exact = has_closed_form(p);

    Output o;
    Table t;
    t.columns = {"l", "l_prime", "n_r", "E_numeric", exact ? "E_closed_form" : "E_wkb", "abs_error"};
    double worst = 0.0;
    std::string energies;
    for (int n_r = lo; n_r <= hi; ++n_r) {
        const EigenSolution sol = solve_radial(problem, n_r);
        const double ref = exact ? closed_form_energy(p, l_prime, n_r)
                                 : wkb_energy(p, wkb_quantum_number(p, l_prime, n_r));
        const double err = std::abs(sol.E - ref);
        worst = std::max(worst, err);
        t.rows.push_back({static_cast<long long>(c.l), l_prime, static_cast<long long>(n_r), sol.E, ref, err});
        energies += (energies.empty() ? "" : ", ") + fmt(sol.E);
        if (c.chi_output) write_chi(*c.chi_output, sol.chi);
    }
    o.data = std::move(t);
    o.summary = "spectrum: l=" + std::to_string(c.l) + " l'=" + fmt(l_prime) + " E(n_r=" + std::to_string(lo) +
                ".." + std::to_string(hi) + ") = " + energies + "; max |E - " + (exact ? "closed form" : "WKB") +
                "| = " + fmt(worst, 3);
    return o;
}

Output run_ladder(const RunConfig& c) {
    const CombinedPotential p = make_potential(c);
    p.require_stable();
    const int n_r = c.nr ? c.nr->first : 0;
    const double l_prime = effective_l(c.l, p.b());
    const RadialProblem problem(p, c.l, grid_for(p, c, l_prime, n_r + 1));
    const EigenSolution sol = solve_radial(problem, n_r);
    const LadderSpec spec = factorize(p, sol.n);
    const LadderDirection dir = c.up ? LadderDirection::up : LadderDirection::down;
    const LadderResult res = apply_ladder(sol, spec, dir);

    std::optional<double> overlap;
    const int target = c.up ? n_r + 1 : n_r - 1;
    if (!res.annihilated && target >= 0) {
        const EigenSolution want = solve_radial(problem, target);
        overlap = std::abs(inner_product(res.chi, want.chi));
    }
    if (c.chi_output) write_chi(*c.chi_output, res.chi);

    Json j;
    j["branch"] = to_string(spec.branch);
    j["n"] = spec.n;
    j["direction"] = to_string(dir);
    j["overlap"] = overlap ? Json(*overlap) : Json(nullptr);
    j["annihilated"] = res.annihilated;

    Output o;
    o.default_format = Format::json;
    o.data = std::move(j);
    o.summary = "ladder: " + to_string(spec.branch) + " " + to_string(dir) + " from n_r=" + std::to_string(n_r) +
                (res.annihilated ? ", annihilated (relative norm " + fmt(res.raw_norm, 3) + ")"
                                 : ", overlap with n_r=" + std::to_string(target) + " state " +
                                       fmt(overlap.value_or(NAN), 12));
    return o;
}

Output run_wkb(const RunConfig& c) {
    const CombinedPotential p = make_potential(c);
    const auto [lo, hi] = c.nr.value_or(std::pair{0, 4});
    const double l_prime = effective_l(c.l, p.b());
    const WkbSpectrumParams w = wkb_params(p, l_prime);

    Output o;
    Table t;
    t.columns = {"l", "l_prime", "n_r", "n", "E_wkb"};
    for (int n_r = lo; n_r <= hi; ++n_r) {
        const double n = wkb_quantum_number(p, l_prime, n_r);
        t.rows.push_back({static_cast<long long>(c.l), l_prime, static_cast<long long>(n_r), n, wkb_energy(p, n)});
    }
    o.data = std::move(t);
    o.summary = "wkb: alpha_nu=" + fmt(w.alpha_nu, 15) + " exponent=" + fmt(w.exponent, 15) +
                " n_offset=" + fmt(w.n_offset, 15) + " E(n_r=" + std::to_string(lo) + ")=" +
                fmt(wkb_energy(p, lo + w.n_offset), 15);
    return o;
}

Output run_runge_lenz(const RunConfig& c) {
    const CombinedPotential p = make_potential(c);
    const double L = resolve_L(p, c);
    const OrbitState start = pericenter_start(p, L, *c.E);
    IntegrationOptions opt;
    opt.rtol = c.tol.value_or(1e-10);
    opt.atol = opt.rtol * 1e-2;
    const OrbitTrajectory traj = integrate_orbit(p, start, c.t_end, opt);
    const auto track = runge_lenz_track(p, traj);

    Output o;
    Table t;
    t.columns = {"t", "Rx", "Ry", "magnitude", "angle"};
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& s : track) {
        t.rows.push_back({s.t, s.Rx, s.Ry, s.magnitude, s.angle});
        lo = std::min(lo, s.magnitude);
        hi = std::max(hi, s.magnitude);
    }
    o.data = std::move(t);
    if (p.b() == 0.0) {
        const double e = std::sqrt(std::max(0.0, 1.0 + 2.0 * *c.E * L * L / (p.a() * p.a())));
        o.summary = "runge-lenz: |R| in [" + fmt(lo, 15) + ", " + fmt(hi, 15) + "], eccentricity " + fmt(e, 15);
    } else {
        const ApsisPrecession prec = apsis_precession(p, traj);
        const double kappa = shape_indicators(p, L).kappa;
        o.summary = "runge-lenz: apsis precession per radial period " + fmt(prec.per_radial_period, 12) +
                    " (2 pi (1/kappa - 1) = " + fmt(2.0 * std::numbers::pi * (1.0 / kappa - 1.0), 12) + ")";
    }
    return o;
}

void print_error(std::ostream& err, const std::string& kind, const std::string& message, int code) {
    Json j;
    j["error"] = kind;
    j["message"] = message;
    j["exit_code"] = code;
    err << j.dump() << '\n';
}

}  // namespace

std::string to_string(Command command) {
    for (const auto& [c, name] : command_names)
        if (c == command) return name;
    return "?";
}

std::optional<Command> parse_command(const std::string& name) {
    for (const auto& [c, n] : command_names)
        if (name == n) return c;
    return std::nullopt;
}

Rational parse_kappa(const std::string& text) {
    const auto bad = [&] { return UsageError("cannot parse kappa '" + text + "'"); };
    auto parse_int = [&](const std::string& s) {
        if (s.empty()) throw bad();
        std::size_t used = 0;
        long long v = 0;
        try {
            v = std::stoll(s, &used);
        } catch (const std::exception&) {
            throw bad();
        }
        if (used != s.size()) throw bad();
        return v;
    };

    const auto slash = text.find('/');
    if (slash != std::string::npos) {
        const long long q = parse_int(text.substr(0, slash));
        const long long p = parse_int(text.substr(slash + 1));
        if (p == 0) throw UsageError("kappa '" + text + "' has zero denominator");
        if (q <= 0 || p < 0) throw UsageError("kappa must be positive");
        const long long g = std::gcd(q, p);
        return {q / g, p / g};
    }

    double x = 0.0;
    try {
        std::size_t used = 0;
        x = std::stod(text, &used);
        if (used != text.size()) throw bad();
    } catch (const std::invalid_argument&) {
        throw bad();
    } catch (const std::out_of_range&) {
        throw bad();
    }
    if (!(x > 0.0) || !std::isfinite(x)) throw UsageError("kappa must be positive");
    const auto r = rational_within(x, 1e-9 * std::max(1.0, x), 64);
    if (!r) throw UsageError("kappa " + text + " has no rational form with denominator <= 64");
    return *r;
}

std::pair<int, int> parse_nr_range(const std::string& text) {
    auto parse_int = [&](const std::string& s) {
        std::size_t used = 0;
        int v = -1;
        try {
            v = std::stoi(s, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (s.empty() || used != s.size() || v < 0) throw UsageError("cannot parse n_r '" + text + "'");
        return v;
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const int v = parse_int(text);
        return {v, v};
    }
    const int lo = parse_int(text.substr(0, dots));
    const int hi = parse_int(text.substr(dots + 2));
    if (hi < lo) throw UsageError("empty n_r range '" + text + "'");
    return {lo, hi};
}

RunConfig parse_arguments(int argc, const char* const* argv) {
    CLI::App app{"orbitkit: closed orbits and ladder operators for V(r) = a r^nu + b/r^2"};
    app.name("orbitkit");

    std::string names;
    for (const auto& [c, n] : command_names) names += (names.empty() ? "" : ", ") + std::string(n);
    std::string command;
    app.add_option("command", command, "One of: " + names);

    // Each flag feeds the config key it overrides.
    struct Binding {
        std::string key;
        bool numeric;
        double real = 0.0;
        std::string text;
        CLI::Option* option = nullptr;
    };
    std::vector<Binding> bindings;
    bindings.reserve(32);
    auto bind = [&](const std::string& flag, const std::string& key, bool numeric, const std::string& help) {
        Binding& b = bindings.emplace_back();
        b.key = key;
        b.numeric = numeric;
        b.option = numeric ? app.add_option(flag, b.real, help) : app.add_option(flag, b.text, help);
    };
    bind("--a", "a", true, "power-law coefficient a");
    bind("--nu", "nu", true, "power-law exponent nu");
    bind("--b", "b", true, "inverse-square coefficient b");
    bind("--lambda", "lambda", true, "alkali shorthand: a = -1, nu = -1, b = -lambda");
    bind("--L", "L", true, "angular momentum");
    bind("--E", "E", true, "energy");
    bind("--kappa", "kappa", false, "angular scale kappa as q/p or decimal (fixes L)");
    bind("--l", "l", true, "orbital quantum number");
    bind("--nr", "nr", false, "radial quantum number or range lo..hi");
    bind("--t-end", "t_end", true, "integration end time");
    bind("--tol", "tol", true, "integrator tolerance");
    bind("--tol-rational", "tol_rational", true, "rational-detection tolerance");
    bind("--max-den", "max_den", true, "largest denominator tried");
    bind("--grid-n", "grid_n", true, "radial grid points");
    bind("--r-max", "r_max", true, "radial grid extent");
    bind("--nu-list", "nu_list", false, "bertrand-scan exponents, comma separated");
    bind("--ecc", "eccentricities", false, "bertrand-scan eccentricities, comma separated");
    bind("-o,--output", "output", false, "output file");
    bind("--format", "format", false, "csv or json");
    bind("--chi-output", "chi_output", false, "wavefunction CSV (r, chi)");
    bool up = false, down = false;
    app.add_flag("--up", up, "raise (default)");
    app.add_flag("--down", down, "lower");
    std::string config_path;
    app.add_option("--config", config_path, "JSON config; flags override its fields");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested(app.help());
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }

    Json merged = config_path.empty() ? Json::object() : read_config(config_path);
    if (!command.empty()) merged["command"] = command;
    for (const Binding& b : bindings) {
        if (b.option->count() == 0) continue;
        if (b.numeric)
            merged[b.key] = b.real;
        else
            merged[b.key] = b.text;
    }
    if (up && down) throw UsageError("--up and --down are exclusive");
    if (up) merged["direction"] = "up";
    if (down) merged["direction"] = "down";

    RunConfig config = from_json(merged);
    config.threads = threads_from_environment();
    return config;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        Output o;
        switch (config.command) {
            case Command::orbit: o = run_orbit(config); break;
            case Command::closure: o = run_closure(config); break;
            case Command::bertrand_scan: o = run_scan(config); break;
            case Command::spectrum: o = run_spectrum(config); break;
            case Command::ladder: o = run_ladder(config); break;
            case Command::wkb: o = run_wkb(config); break;
            case Command::runge_lenz: o = run_runge_lenz(config); break;
        }
        emit(o, config);
        out << o.summary << '\n';
        return 0;
    } catch (const UsageError& e) {
        print_error(err, "usage", e.what(), 2);
        return 2;
    } catch (const DomainError& e) {
        print_error(err, e.kind(), e.what(), 1);
        return 1;
    } catch (const std::exception& e) {
        print_error(err, "runtime", e.what(), 1);
        return 1;
    }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    RunConfig config;
    try {
        config = parse_arguments(argc, argv);
    } catch (const HelpRequested& h) {
        out << h.what();
        return 0;
    } catch (const UsageError& e) {
        print_error(err, "usage", e.what(), 2);
        return 2;
    }
    return run(config, out, err);
}

}  // namespace orbitkit::cli

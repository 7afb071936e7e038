#include "cli/cli.hpp"

#include "mdf/dipole_fields.hpp"
#include "mdf/errors.hpp"
#include "mdf/friction_forces.hpp"
#include "mdf/geometry_coupling.hpp"
#include "mdf/materials_spectral.hpp"
#include "mdf/matsubara.hpp"
#include "mdf/oscillator_pair.hpp"
#include "mdf/response_kinetics.hpp"
#include "mdf/units.hpp"
#include "verify/oracles.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <exception>
#include <fstream>
#include <map>
#include <optional>
#include <ostream>
#include <set>
#include <thread>

namespace mdf::cli {

namespace {

using units::UnitContext;

// ---------------------------------------------------------------------------
// Parameters

struct NumericParam {
    const char* name;
    std::optional<double> fallback; // nullopt: unset unless given
    bool positive;
    const char* help;
};

const std::vector<NumericParam>& numeric_params()
{
    static const std::vector<NumericParam> p = {
        {"alpha", 0.5, false, "oscillator coupling (>= 0)"},
        {"beta", 1.0, true, "inverse temperature, reduced"},
        {"temperature-kelvin", std::nullopt, true, "temperature in kelvin (gaussian units only)"},
        {"d", 1.0, true, "gap between the half-spaces"},
        {"z0", 1.0, true, "particle height above the half-space"},
        {"r", 1.0, true, "pair separation, along z"},
        {"rho1", 1.0, true, "number density of body 1"},
        {"rho2", 1.0, true, "number density of body 2 (the half-space in plane mode)"},
        {"omega-p", std::nullopt, true, "Drude plasma frequency; replaces D1, D2 when set"},
        {"nu", 0.1, false, "Drude damping"},
        {"D1", 1.0, false, "spectral slope of body 1"},
        {"D2", 1.0, false, "spectral slope of body 2"},
        {"v", 1e-3, false, "sliding speed, along x"},
        {"omega", 1.0, true, "sharp oscillator frequency"},
        {"m1", 1.0, true, "sharp oscillator mass, body 1"},
        {"m2", 1.0, true, "sharp oscillator mass, body 2"},
        {"zeta", 1e-2, false, "imaginary-axis wavenumber (fields)"},
        {"length-unit-cm", 1e-7, true, "reduced length unit in cm (gaussian output)"},
    };
    return p;
}

struct StringParam {
    const char* name;
    const char* fallback;
    std::vector<std::string> allowed; // empty: free text
};

const std::vector<StringParam>& string_params()
{
    static const std::vector<StringParam> p = {
        {"units", "reduced", {"reduced", "gaussian"}},
        {"temperature", "finite", {"finite", "zero"}},
        {"model", "smoothed", {"smoothed", "sharp"}},
        {"spectrum-file-1", "", {}},
        {"spectrum-file-2", "", {}},
    };
    return p;
}

const NumericParam* find_numeric(const std::string& name)
{
    for (const auto& p : numeric_params())
        if (name == p.name) return &p;
    return nullptr;
}

const StringParam* find_string(const std::string& name)
{
    for (const auto& p : string_params())
        if (name == p.name) return &p;
    return nullptr;
}

struct Params {
    std::map<std::string, double> num;
    std::map<std::string, std::string> str;
    std::set<std::string> explicit_keys; // given on the command line or in a file
    std::uint64_t seed = 20240611;

    bool has(const std::string& k) const { return num.count(k) != 0; }
    double get(const std::string& k) const
    {
        auto it = num.find(k);
        if (it == num.end()) throw ConfigError("parameter --" + k + " is required here");
        return it->second;
    }
    const std::string& s(const std::string& k) const { return str.at(k); }
};

Params defaults()
{
    Params p;
    for (const auto& np : numeric_params())
        if (np.fallback) p.num[np.name] = *np.fallback;
    for (const auto& sp : string_params()) p.str[sp.name] = sp.fallback;
    return p;
}

double parse_number(const std::string& key, const std::string& text, const std::string& where)
{
    std::size_t pos = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &pos);
    } catch (const std::exception&) {
        pos = std::string::npos;
    }
    if (text.empty() || pos != text.size())
        throw ConfigError(fmt::format("{}: '{}' is not a number for '{}'", where, text, key));
    return v;
}

void set_value(Params& p, const std::string& key, const std::string& value, const std::string& where)
{
    if (key == "seed") {
        std::size_t pos = 0;
        try {
            p.seed = std::stoull(value, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (value.empty() || pos != value.size() || value[0] == '-')
            throw ConfigError(fmt::format("{}: '{}' is not an unsigned integer for 'seed'", where, value));
    } else if (find_numeric(key)) {
        p.num[key] = parse_number(key, value, where);
    } else if (const auto* sp = find_string(key)) {
        if (!sp->allowed.empty() && std::find(sp->allowed.begin(), sp->allowed.end(), value) == sp->allowed.end())
            throw ConfigError(fmt::format("{}: '{}' is not a valid value for '{}'", where, value, key));
        p.str[key] = value;
    } else {
        throw ConfigError(fmt::format("{}: unknown key '{}'", where, key));
    }
    p.explicit_keys.insert(key);
}

std::string trim(const std::string& s)
{
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

// Flat key=value file; '#' starts a comment.
void apply_config_file(Params& p, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        line = trim(line);
        if (line.empty()) continue;
        std::string where = fmt::format("{}:{}", path, lineno);
        auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError(fmt::format("{}: expected key=value, got '{}'", where, line));
        std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(where + ": empty key");
        set_value(p, key, trim(line.substr(eq + 1)), where);
    }
}

void validate(const Params& p)
{
    for (const auto& np : numeric_params()) {
        auto it = p.num.find(np.name);
        if (it == p.num.end()) continue;
        if (!std::isfinite(it->second)) throw DomainError(fmt::format("--{} must be finite", np.name));
        if (np.positive && !(it->second > 0.0)) throw DomainError(fmt::format("--{} must be positive", np.name));
        if (!np.positive && it->second < 0.0) throw DomainError(fmt::format("--{} must be non-negative", np.name));
    }
    if (p.has("temperature-kelvin")) {
        if (p.explicit_keys.count("beta")) throw ConfigError("give either --beta or --temperature-kelvin, not both");
        if (p.s("units") != "gaussian")
            throw ConfigError("--temperature-kelvin needs --units gaussian; use --beta in reduced units");
    }
}

// ---------------------------------------------------------------------------
// Rows

struct Row {
    std::vector<std::pair<std::string, std::string>> cols;
    std::map<std::string, std::string> dims; // column -> unit, header only

    void add(const std::string& name, const std::string& v) { cols.emplace_back(name, v); }
    void add(const std::string& name, double v) { add(name, fmt::format("{}", v)); }
    void add(const std::string& name, const units::Quantity& q, bool gaussian)
    {
        add(name, q.value);
        if (gaussian) dims[name] = units::to_string(q.dim);
    }
};

bool gaussian(const Params& p) { return p.s("units") == "gaussian"; }

UnitContext context_for(const Params& p)
{
    return gaussian(p) ? UnitContext::gaussian(p.get("length-unit-cm")) : UnitContext::identity();
}

double effective_beta(const Params& p)
{
    if (p.has("temperature-kelvin")) return context_for(p).beta_from_kelvin(p.get("temperature-kelvin"));
    return p.get("beta");
}

materials::SpectralAmplitude slope_for(const Params& p, int body)
{
    if (p.has("omega-p"))
        return materials::drude_D({p.get("omega-p"), p.get("nu"), p.get(body == 1 ? "rho1" : "rho2")});
    return {p.get(body == 1 ? "D1" : "D2")};
}

bool has_spectrum_files(const Params& p)
{
    return !p.s("spectrum-file-1").empty() || !p.s("spectrum-file-2").empty();
}

materials::SpectralDensity spectrum_for(const Params& p, int body)
{
    const std::string& file = p.s(body == 1 ? "spectrum-file-1" : "spectrum-file-2");
    if (!file.empty()) return materials::load_tabulated_spectrum(file);
    return materials::SpectralDensity::linear(slope_for(p, body).D);
}

Row eval_eigen(const Params& p)
{
    double alpha = p.get("alpha");
    auto w = oscillator::eigenfrequencies(alpha);
    auto ctx = context_for(p);
    bool g = gaussian(p);
    Row row;
    row.add("alpha", alpha);
    row.add("omega_plus", ctx.to_physical({w.omega_plus, units::dim::frequency}), g);
    row.add("omega_minus", ctx.to_physical({w.omega_minus, units::dim::frequency}), g);
    row.add("e0", ctx.to_physical({oscillator::ground_state_energy(alpha), units::dim::energy}), g);
    row.add("units", p.s("units"));
    return row;
}

Row eval_free_energy(const Params& p)
{
    double alpha = p.get("alpha"), beta = effective_beta(p);
    auto grid = matsubara::MatsubaraGrid::automatic(beta);
    auto f = matsubara::induced_free_energy(alpha, grid);
    auto ctx = context_for(p);
    bool g = gaussian(p);
    auto e = [&](double v) { return ctx.to_physical(units::Quantity{v, units::dim::energy}); };
    Row row;
    row.add("alpha", alpha);
    row.add("beta", beta);
    row.add("free_energy", e(f.value), g);
    row.add("partial_sum", e(f.partial_sum), g);
    row.add("tail_estimate", e(f.tail_estimate), g);
    row.add("tail_error_bound", e(f.tail_error_bound), g);
    row.add("n_max", fmt::format("{}", grid.n_max));
    row.add("units", p.s("units"));
    return row;
}

Row eval_fields(const Params& p)
{
    if (gaussian(p)) throw ConfigError("fields reports reduced units only");
    double r = p.get("r"), zeta = p.get("zeta");
    Vec3 sep{0.0, 0.0, r};
    Vec3 h = fields::magnetic_field_quasistatic({1.0, 0.0, 0.0}, sep);
    Vec3 e = fields::electric_field_quasistatic({0.0, 1.0, 0.0}, sep);
    auto full = fields::magnetic_field_full({1.0, 0.0, 0.0}, Complex(zeta, 0.0), sep);
    Vec3 quasi = fields::magnetic_field_quasistatic({zeta, 0.0, 0.0}, sep);
    Row row;
    row.add("r", r);
    row.add("zeta", zeta);
    row.add("coupling_alpha", fields::coupling_alpha(r));
    row.add("H_quasistatic_y", h.y);
    row.add("E_quasistatic_x", e.x);
    row.add("H_full_y", full[1].real());
    row.add("H_quasistatic_at_zeta_y", quasi.y);
    row.add("relative_deviation", zeta == 0.0 ? 0.0 : std::abs(full[1].real() - quasi.y) / std::abs(quasi.y));
    row.add("units", p.s("units"));
    return row;
}

forces::FrictionReport friction_report(const std::string& geometry, const Params& p)
{
    using response::OscState;
    const bool sharp = p.s("model") == "sharp";
    const double v = p.get("v");
    auto ctx = context_for(p);
    auto sharp_pair = [&](double beta) {
        return std::pair{OscState::thermal(p.get("omega"), p.get("m1"), beta),
                         OscState::thermal(p.get("omega"), p.get("m2"), beta)};
    };
    if (geometry == "pair") {
        double beta = effective_beta(p);
        geometry::PairGeometry g{{0.0, 0.0, p.get("r")}};
        Vec3 vel{v, 0.0, 0.0};
        if (sharp) {
            auto [o1, o2] = sharp_pair(beta);
            return forces::pair_force_sharp(g, vel, o1, o2, beta);
        }
        return forces::pair_force_smoothed(g, vel, spectrum_for(p, 1), spectrum_for(p, 2), beta);
    }
    if (geometry == "plane") {
        double beta = effective_beta(p);
        geometry::PlaneGeometry g{p.get("z0"), p.get("rho2")};
        if (sharp) {
            auto [o1, o2] = sharp_pair(beta);
            return forces::plane_force_sharp(g, v, o1, o2, beta);
        }
        return forces::plane_force(g, v, spectrum_for(p, 1), spectrum_for(p, 2), beta);
    }
    if (geometry == "slabs") {
        geometry::SlabGeometry g{p.get("d"), p.get("rho1"), p.get("rho2")};
        if (p.s("temperature") == "zero") {
            if (sharp) throw ConfigError("--temperature zero supports --model smoothed only");
            if (has_spectrum_files(p)) throw ConfigError("--temperature zero needs linear spectra (D1, D2 or Drude)");
            return forces::zero_T_slab_force(g, v, slope_for(p, 1), slope_for(p, 2), ctx);
        }
        double beta = effective_beta(p);
        if (sharp) {
            auto [o1, o2] = sharp_pair(beta);
            return forces::slabs_force_sharp(g, v, o1, o2, beta);
        }
        if (!has_spectrum_files(p))
            return forces::finite_T_slab_force(g, v, slope_for(p, 1), slope_for(p, 2), beta, ctx);
        return forces::smoothed_forces(geometry::G_slabs_realspace(g), v,
                                       materials::smoothed_H0(spectrum_for(p, 1), spectrum_for(p, 2), beta),
                                       forces::Regime::slabs_finite_T);
    }
    throw ConfigError("friction geometry must be pair, plane or slabs, got '" + geometry + "'");
}

Row eval_friction(const std::string& geometry, const Params& p)
{
    auto rep = friction_report(geometry, p);
    bool g = gaussian(p);
    if (g) rep = forces::to_physical_units(rep, context_for(p));
    Row row;
    row.add("regime", std::string(forces::regime_name(rep.regime)));
    row.add("units", std::string(forces::unit_system_name(rep.unit_system)));
    row.add("delta_valued", rep.delta_valued ? "1" : "0");
    row.add("delta_frequency", rep.delta_frequency, g);
    row.add("force_x", rep.force[0], g);
    row.add("force_y", rep.force[1], g);
    row.add("force_z", rep.force[2], g);
    row.add("force_along_v", rep.force_along_v, g);
    for (const auto& [k, q] : rep.intermediates) row.add(k, q, g);
    return row;
}

struct Target {
    std::string command;  // eigen, free-energy, fields, friction
    std::string geometry; // friction only
};

Target parse_target(const std::vector<std::string>& words)
{
    if (words.empty()) throw ConfigError("sweep needs a target command");
    Target t{words[0], words.size() > 1 ? words[1] : ""};
    bool friction = t.command == "friction";
    if (t.command != "eigen" && t.command != "free-energy" && t.command != "fields" && !friction)
        throw ConfigError("cannot sweep '" + t.command + "'");
    if (friction && t.geometry.empty()) throw ConfigError("sweep friction needs pair, plane or slabs");
    if (words.size() > (friction ? 2u : 1u)) throw ConfigError("unexpected sweep target word '" + words.back() + "'");
    return t;
}

Row evaluate(const Target& t, const Params& p)
{
    validate(p);
    if (t.command == "eigen") return eval_eigen(p);
    if (t.command == "free-energy") return eval_free_energy(p);
    if (t.command == "fields") return eval_fields(p);
    return eval_friction(t.geometry, p);
}

// ---------------------------------------------------------------------------
// Sweeps

struct Axis {
    std::string name;
    double min = 0.0, max = 0.0;
    int steps = 1;
    bool log = false;

    double at(int k) const
    {
        if (steps == 1) return min;
        double f = static_cast<double>(k) / (steps - 1);
        if (k == steps - 1) return max;
        return log ? min * std::pow(max / min, f) : min + (max - min) * f;
    }
};

Axis parse_axis(const std::string& text)
{
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        auto c = text.find(':', start);
        parts.push_back(text.substr(start, c - start));
        if (c == std::string::npos) break;
        start = c + 1;
    }
    if (parts.size() != 4 && parts.size() != 5)
        throw ConfigError("axis '" + text + "' must be name:min:max:steps[:log|lin]");
    Axis a;
    a.name = parts[0];
    const auto* np = find_numeric(a.name);
    if (!np) throw ConfigError("axis '" + text + "': '" + a.name + "' is not a numeric parameter");
    a.min = parse_number(a.name, parts[1], "axis " + text);
    a.max = parse_number(a.name, parts[2], "axis " + text);
    double steps = parse_number("steps", parts[3], "axis " + text);
    if (!(steps >= 1.0) || steps != std::floor(steps) || steps > 1e9)
        throw ConfigError("axis '" + text + "': steps must be a positive integer");
    a.steps = static_cast<int>(steps);
    if (parts.size() == 5) {
        if (parts[4] != "log" && parts[4] != "lin") throw ConfigError("axis '" + text + "': scale must be log or lin");
        a.log = parts[4] == "log";
    }
    if (a.log && !(a.min > 0.0 && a.max > 0.0)) throw ConfigError("axis '" + text + "': log axis needs positive bounds");
    return a;
}

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
    std::map<std::string, std::string> dims;
};

Table run_sweep(const Target& t, const Params& base, const std::vector<Axis>& axes, std::size_t budget, int workers)
{
    std::size_t n = 1;
    for (const auto& a : axes) {
        n *= static_cast<std::size_t>(a.steps);
        if (n > budget) throw ConfigError(fmt::format("sweep exceeds the budget of {} points", budget));
    }
    std::vector<Row> rows(n);
    std::vector<std::exception_ptr> errors(n);
    auto point = [&](std::size_t i) {
        Params p = base;
        std::size_t rem = i;
        // last axis varies fastest
        std::vector<double> values(axes.size());
        for (std::size_t k = axes.size(); k-- > 0;) {
            values[k] = axes[k].at(static_cast<int>(rem % axes[k].steps));
            rem /= axes[k].steps;
        }
        for (std::size_t k = 0; k < axes.size(); ++k) {
            p.num[axes[k].name] = values[k];
            p.explicit_keys.insert(axes[k].name);
        }
        Row row = evaluate(t, p);
        Row out;
        for (std::size_t k = 0; k < axes.size(); ++k) out.add("sweep_" + axes[k].name, values[k]);
        for (auto& c : row.cols) out.cols.push_back(std::move(c));
        out.dims = std::move(row.dims);
        return out;
    };
    if (workers <= 0) workers = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    workers = static_cast<int>(std::min<std::size_t>(workers, n));
    auto work = [&](int w) {
        for (std::size_t i = w; i < n; i += workers) {
            try {
                rows[i] = point(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) pool.emplace_back(work, w);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    Table table;
    for (const auto& c : rows[0].cols) table.columns.push_back(c.first);
    table.dims = rows[0].dims;
    for (const auto& r : rows) {
        if (r.cols.size() != table.columns.size()) throw NumericError("sweep rows disagree on their column set");
        std::vector<std::string> vals;
        for (const auto& c : r.cols) vals.push_back(c.second);
        table.rows.push_back(std::move(vals));
    }
    return table;
}

// ---------------------------------------------------------------------------
// Output

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char c : s) {
        if (c == '"') q += '"';
        q += c;
    }
    return q + "\"";
}

std::string config_echo(const Params& p)
{
    std::string s;
    for (const auto& [k, v] : p.num) s += fmt::format("{}{}={}", s.empty() ? "" : " ", k, v);
    for (const auto& [k, v] : p.str)
        if (!v.empty()) s += fmt::format(" {}={}", k, v);
    s += fmt::format(" seed={}", p.seed);
    return s;
}

void write_csv(std::ostream& os, const std::string& command, const Params& p, const Table& t)
{
    os << "# mdf " << version << '\n';
    os << "# command: " << command << '\n';
    os << "# units: " << p.s("units") << '\n';
    os << "# config: " << config_echo(p) << '\n';
    for (const auto& c : t.columns) {
        auto it = t.dims.find(c);
        if (it != t.dims.end()) os << "# unit " << c << ": " << it->second << '\n';
    }
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << (i ? "," : "") << csv_field(t.columns[i]);
    os << '\n';
    for (const auto& r : t.rows) {
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << csv_field(r[i]);
        os << '\n';
    }
}

void write_json(const std::string& path, const std::string& command, const Params& p, const Table& t)
{
    nlohmann::ordered_json j;
    j["version"] = version;
    j["command"] = command;
    j["units"] = p.s("units");
    nlohmann::ordered_json cfg;
    for (const auto& [k, v] : p.num) cfg[k] = v;
    for (const auto& [k, v] : p.str) cfg[k] = v;
    cfg["seed"] = p.seed;
    j["config"] = cfg;
    j["columns"] = t.columns;
    j["column_units"] = t.dims;
    auto rows = nlohmann::ordered_json::array();
    for (const auto& r : t.rows) {
        nlohmann::ordered_json row;
        for (std::size_t i = 0; i < r.size(); ++i) {
            // numbers stay numbers
            char* end = nullptr;
            double v = std::strtod(r[i].c_str(), &end);
            if (!r[i].empty() && end && *end == '\0')
                row[t.columns[i]] = v;
            else
                row[t.columns[i]] = r[i];
        }
        rows.push_back(row);
    }
    j["rows"] = rows;
    std::ofstream out(path);
    if (!out) throw ConfigError("cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

void emit(std::ostream& out, const std::string& out_path, const std::string& json_path, const std::string& command,
          const Params& p, const Table& t)
{
    if (out_path.empty()) {
        write_csv(out, command, p, t);
    } else {
        std::ofstream f(out_path);
        if (!f) throw ConfigError("cannot write '" + out_path + "'");
        write_csv(f, command, p, t);
    }
    if (!json_path.empty()) write_json(json_path, command, p, t);
}

int run_verify(const std::string& suite, std::uint64_t seed, const std::string& out_path, std::ostream& out)
{
    auto battery = verify::run_suite(suite, seed);
    int failed = 0;
    for (const auto& c : battery) {
        if (!c.passed) ++failed;
        out << (c.passed ? "PASS " : "FAIL ") << c.name << fmt::format(" ({:.2f} s)", c.seconds) << ": " << c.detail
            << '\n';
    }
    out << fmt::format("{} of {} checks passed\n", battery.size() - failed, battery.size());
    if (!out_path.empty()) {
        std::ofstream f(out_path);
        if (!f) throw ConfigError("cannot write '" + out_path + "'");
        f << "check,passed,seconds,detail\n";
        for (const auto& c : battery)
            f << csv_field(c.name) << ',' << (c.passed ? 1 : 0) << ',' << fmt::format("{:.3f}", c.seconds) << ','
              << csv_field(c.detail) << '\n';
    }
    return failed ? exit_numeric : exit_ok;
}

} // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Magnetodielectric Casimir friction calculator", "mdf"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version);

    std::map<std::string, std::string> raw;
    std::map<std::string, CLI::Option*> opts;
    for (const auto& np : numeric_params())
        opts[np.name] = app.add_option(std::string("--") + np.name, raw[np.name], np.help);
    for (const auto& sp : string_params()) {
        auto* o = app.add_option(std::string("--") + sp.name, raw[sp.name]);
        if (!sp.allowed.empty()) o->check(CLI::IsMember(sp.allowed));
        opts[sp.name] = o;
    }
    opts["seed"] = app.add_option("--seed", raw["seed"], "RNG seed");
    opts["beta"]->excludes(opts["temperature-kelvin"]);

    std::string config_path, out_path, json_path;
    app.add_option("--config", config_path, "key=value file; command-line flags take precedence");
    app.add_option("--out", out_path, "write CSV here instead of stdout");
    app.add_option("--json", json_path, "also write a JSON mirror");

    auto* eigen = app.add_subcommand("eigen", "normal modes of the oscillator pair")->fallthrough();
    auto* free_energy = app.add_subcommand("free-energy", "induced Matsubara free energy")->fallthrough();
    auto* fields_cmd = app.add_subcommand("fields", "dipole fields and coupling at separation r")->fallthrough();
    auto* friction = app.add_subcommand("friction", "assembled friction force")->fallthrough();
    std::string geometry;
    friction->add_option("geometry", geometry, "pair, plane or slabs")
        ->required()
        ->check(CLI::IsMember({"pair", "plane", "slabs"}));

    auto* sweep = app.add_subcommand("sweep", "Cartesian parameter sweep of another command")->fallthrough();
    std::vector<std::string> target, axis_specs;
    std::size_t budget = 100000;
    int workers = 1;
    sweep->add_option("target", target, "command to sweep, e.g. 'friction slabs'")->required();
    sweep->add_option("--axis", axis_specs, "name:min:max:steps[:log|lin]")->required()->allow_extra_args(false);
    sweep->add_option("--max-points", budget, "reject sweeps larger than this");
    sweep->add_option("--workers", workers, "evaluation threads (0: all cores)");

    auto* verify_cmd = app.add_subcommand("verify", "oracle batteries")->fallthrough();
    std::string suite = "all";
    verify_cmd->add_option("--suite", suite, "numerics, fields, oscillator, matsubara, response, materials, "
                                             "geometry, forces, acceptance or all");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            app.exit(e, out, err);
            return exit_ok;
        }
        err << "error: " << e.what() << '\n';
        return exit_config;
    }

    try {
        Params p = defaults();
        if (!config_path.empty()) apply_config_file(p, config_path);
        for (const auto& [name, opt] : opts)
            if (opt->count() > 0) set_value(p, name, raw[name], "--" + name);
        // a kelvin temperature given on the command line beats a file beta
        if (opts["temperature-kelvin"]->count() > 0 && opts["beta"]->count() == 0) p.explicit_keys.erase("beta");

        if (verify_cmd->parsed()) return run_verify(suite, p.seed, out_path, out);

        Target t;
        std::vector<Axis> axes;
        std::string command;
        if (sweep->parsed()) {
            t = parse_target(target);
            for (const auto& a : axis_specs) axes.push_back(parse_axis(a));
            command = "sweep " + t.command + (t.geometry.empty() ? "" : " " + t.geometry);
        } else if (friction->parsed()) {
            t = {"friction", geometry};
            command = "friction " + geometry;
        } else {
            t.command = eigen->parsed() ? "eigen" : free_energy->parsed() ? "free-energy" : "fields";
            (void)fields_cmd;
            command = t.command;
        }
        if (t.command == "friction" && p.s("temperature") == "zero" && t.geometry != "slabs")
            throw ConfigError("--temperature zero applies to friction slabs only");
        validate(p);
        if (p.has("temperature-kelvin")) p.num.erase("beta"); // not used, keep it out of the echo
        Table table = run_sweep(t, p, axes, budget, axes.empty() ? 1 : workers);
        emit(out, out_path, json_path, command, p, table);
        return exit_ok;
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return exit_config;
    } catch (const DomainError& e) {
        err << "invalid input: " << e.what() << '\n';
        return exit_validation;
    } catch (const NumericError& e) {
        err << "numeric failure: " << e.what() << '\n';
        return exit_numeric;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_numeric;
    }
}

} // namespace mdf::cli

#include "bergman_lab/io.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

namespace bl::io {

namespace fs = std::filesystem;

json number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    return v;
}

double to_number(const json& j, const std::string& field) {
    if (j.is_number()) return j.get<double>();
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        if (s == "inf") return INFINITY;
        if (s == "-inf") return -INFINITY;
        if (s == "nan") return NAN;
    }
    throw ConfigError(field + ": expected a number");
}

json point_json(DiscPoint z) { return json::array({z.real(), z.imag()}); }

namespace {

void check_keys(const json& j, const std::string& where, std::initializer_list<const char*> allowed) {
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    const std::set<std::string> ok(allowed.begin(), allowed.end());
    for (auto it = j.begin(); it != j.end(); ++it)
        if (!ok.count(it.key())) throw ConfigError(where + "." + it.key() + ": unknown field");
}

double field_number(const json& j, const std::string& where, const char* key) {
    if (!j.contains(key)) throw ConfigError(where + "." + key + ": missing");
    return to_number(j.at(key), where + "." + key);
}

std::string kind_of(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
        throw ConfigError(where + ".kind: missing");
    return j.at("kind").get<std::string>();
}

fs::path resolve(const fs::path& base, const std::string& file) {
    const fs::path p(file);
    return p.is_absolute() || base.empty() ? p : base / p;
}

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, sep)) out.push_back(cell);
    return out;
}

}  // namespace

std::vector<double> load_grid_csv(const fs::path& path, int& n) {
    std::ifstream in(path);
    if (!in) throw ConfigError("grid file " + path.string() + ": cannot open");
    struct Row {
        double re, im, v;
    };
    std::vector<Row> rows;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        const auto cells = split(line, ',');
        if (cells.size() != 3) throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": expected re,im,value");
        try {
            rows.push_back({std::stod(cells[0]), std::stod(cells[1]), std::stod(cells[2])});
        } catch (const std::exception&) {
            if (rows.empty()) continue;  // header
            throw ConfigError(path.string() + ":" + std::to_string(lineno) + ": not a number");
        }
    }
    n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
    if (n < 2 || static_cast<std::size_t>(n) * static_cast<std::size_t>(n) != rows.size())
        throw ConfigError(path.string() + ": row count is not a square n*n with n >= 2");
    const double h = 2.0 / (n - 1);
    std::vector<double> samples(rows.size(), NAN);
    for (const Row& r : rows) {
        const double fi = (r.re + 1.0) / h, fj = (r.im + 1.0) / h;
        const long i = std::lround(fi), j = std::lround(fj);
        if (i < 0 || j < 0 || i >= n || j >= n || std::abs(fi - i) > 1e-6 || std::abs(fj - j) > 1e-6)
            throw ConfigError(path.string() + ": point (" + std::to_string(r.re) + "," + std::to_string(r.im) +
                              ") is not on the uniform grid");
        samples[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(j)] = r.v;
    }
    for (double v : samples)
        if (std::isnan(v)) throw ConfigError(path.string() + ": grid has duplicate or missing points");
    return samples;
}

Weight weight_from_json(const json& j, const fs::path& base_dir) {
    const std::string kind = kind_of(j, "weight");
    Weight u;
    if (kind == "constant") {
        check_keys(j, "weight", {"kind", "value", "scale"});
        const double v = j.contains("value") ? field_number(j, "weight", "value") : 1.0;
        if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("weight.value: must be positive");
        u = Weight::constant(v);
    } else if (kind == "standard") {
        check_keys(j, "weight", {"kind", "alpha", "scale"});
        const double a = field_number(j, "weight", "alpha");
        if (!(a > -1.0)) throw ConfigError("weight.alpha: must be > -1");
        u = Weight::standard(a);
    } else if (kind == "power_one_minus_z") {
        check_keys(j, "weight", {"kind", "gamma", "scale"});
        const double g = field_number(j, "weight", "gamma");
        if (!(g > -2.0)) throw ConfigError("weight.gamma: must be > -2");
        u = Weight::power_one_minus_z(g);
    } else if (kind == "grid") {
        check_keys(j, "weight", {"kind", "file", "n", "scale"});
        if (!j.contains("file") || !j.at("file").is_string()) throw ConfigError("weight.file: missing");
        const fs::path path = resolve(base_dir, j.at("file").get<std::string>());
        int n = 0;
        std::vector<double> samples = load_grid_csv(path, n);
        if (j.contains("n") && static_cast<int>(field_number(j, "weight", "n")) != n)
            throw ConfigError("weight.n: file holds a " + std::to_string(n) + "x" + std::to_string(n) + " grid");
        for (double v : samples)
            if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError("weight.file: samples must be positive");
        u = Weight::grid(n, std::move(samples), path.string());
    } else {
        throw ConfigError("weight.kind: unknown kind '" + kind + "'");
    }
    if (j.contains("scale")) {
        const double c = field_number(j, "weight", "scale");
        if (!(c > 0.0)) throw ConfigError("weight.scale: must be positive");
        u = u.scaled(c);
    }
    return u;
}

DiscMeasure measure_from_json(const json& j, const Weight& u, const fs::path& base_dir) {
    const std::string kind = kind_of(j, "measure");
    DiscMeasure mu;
    if (kind == "atomic") {
        check_keys(j, "measure", {"kind", "atoms", "scale"});
        if (!j.contains("atoms") || !j.at("atoms").is_array()) throw ConfigError("measure.atoms: missing");
        std::vector<Atom> atoms;
        for (const json& a : j.at("atoms")) {
            if (!a.is_array() || a.size() != 3) throw ConfigError("measure.atoms: entries are [re, im, mass]");
            const Atom at{DiscPoint(to_number(a[0], "measure.atoms"), to_number(a[1], "measure.atoms")),
                          to_number(a[2], "measure.atoms")};
            if (!(std::abs(at.at) < 1.0)) throw ConfigError("measure.atoms: atom " + format_point(at.at) + " outside the disc");
            if (!(at.mass >= 0.0) || !std::isfinite(at.mass)) throw ConfigError("measure.atoms: masses must be nonnegative");
            atoms.push_back(at);
        }
        mu = DiscMeasure::atomic(std::move(atoms));
    } else if (kind == "weighted_area") {
        check_keys(j, "measure", {"kind", "weight", "scale"});
        mu = DiscMeasure::weighted_area(j.contains("weight") ? weight_from_json(j.at("weight"), base_dir) : u);
    } else if (kind == "power_density") {
        check_keys(j, "measure", {"kind", "t", "scale"});
        const double t = field_number(j, "measure", "t");
        if (!(t > -1.0)) throw ConfigError("measure.t: must be > -1");
        mu = DiscMeasure::power_density(t);
    } else if (kind == "density_grid") {
        check_keys(j, "measure", {"kind", "file", "scale"});
        if (!j.contains("file") || !j.at("file").is_string()) throw ConfigError("measure.file: missing");
        const fs::path path = resolve(base_dir, j.at("file").get<std::string>());
        int n = 0;
        std::vector<double> samples = load_grid_csv(path, n);
        mu = DiscMeasure::density_grid(n, std::move(samples), path.string());
    } else if (kind == "sum") {
        check_keys(j, "measure", {"kind", "parts", "scale"});
        if (!j.contains("parts") || !j.at("parts").is_array()) throw ConfigError("measure.parts: missing");
        std::vector<DiscMeasure> parts;
        for (const json& part : j.at("parts")) parts.push_back(measure_from_json(part, u, base_dir));
        mu = DiscMeasure::sum(std::move(parts));
    } else {
        throw ConfigError("measure.kind: unknown kind '" + kind + "'");
    }
    if (j.contains("scale")) {
        const double c = field_number(j, "measure", "scale");
        if (!(c > 0.0)) throw ConfigError("measure.scale: must be positive");
        mu = mu.scaled(c);
    }
    return mu;
}

namespace {

std::pair<std::string, std::string> split_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos) return {text, ""};
    return {text.substr(0, colon), text.substr(colon + 1)};
}

double spec_number(const std::string& arg, const std::string& what) {
    try {
        std::size_t used = 0;
        const double v = std::stod(arg, &used);
        if (used == arg.size()) return v;
    } catch (const std::exception&) {
    }
    throw ConfigError(what + ": '" + arg + "' is not a number");
}

}  // namespace

json weight_spec(const std::string& text) {
    const auto [kind, arg] = split_spec(text);
    if (kind == "constant") return arg.empty() ? json{{"kind", "constant"}} : json{{"kind", "constant"}, {"value", spec_number(arg, "weight")}};
    if (kind == "standard") return {{"kind", "standard"}, {"alpha", spec_number(arg, "weight")}};
    if (kind == "power_one_minus_z") return {{"kind", "power_one_minus_z"}, {"gamma", spec_number(arg, "weight")}};
    if (kind == "grid") return {{"kind", "grid"}, {"file", arg}};
    if (!text.empty() && text.front() == '{') {
        try {
            return json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("weight: ") + e.what());
        }
    }
    throw ConfigError("weight: unknown spec '" + text + "'");
}

json measure_spec(const std::string& text) {
    const auto [kind, arg] = split_spec(text);
    if (kind == "weighted_area") return {{"kind", "weighted_area"}};
    if (kind == "power_density") return {{"kind", "power_density"}, {"t", spec_number(arg, "measure")}};
    if (kind == "density_grid") return {{"kind", "density_grid"}, {"file", arg}};
    if (kind == "atomic") {
        try {
            return {{"kind", "atomic"}, {"atoms", json::parse(arg)}};
        } catch (const json::exception& e) {
            throw ConfigError(std::string("measure.atoms: ") + e.what());
        }
    }
    if (!text.empty() && text.front() == '{') {
        try {
            return json::parse(text);
        } catch (const json::exception& e) {
            throw ConfigError(std::string("measure: ") + e.what());
        }
    }
    throw ConfigError("measure: unknown spec '" + text + "'");
}

json RunConfig::to_json() const {
    json j;
    j["weight"] = weight;
    j["measure"] = measure;
    j["degree"] = degree;
    j["resolution"] = resolution;
    j["r_max"] = r_max;
    j["lattice_r"] = lattice_r;
    j["ladder"] = {{"rings", ladder.rings}, {"samples", ladder.samples}, {"rho0", ladder.rho0}};
    j["p"] = p;
    j["q"] = q;
    j["t"] = t;
    j["r"] = r;
    j["s"] = s;
    j["h"] = h;
    j["C"] = C;
    j["p0"] = p0;
    j["criterion"] = criterion;
    j["reference"] = reference;
    j["proxy"] = proxy;
    j["out"] = out;
    return j;
}

namespace {

std::vector<double> number_list(const json& j, const std::string& field) {
    std::vector<double> out;
    if (j.is_array()) {
        for (const json& v : j) out.push_back(to_number(v, field));
    } else {
        out.push_back(to_number(j, field));
    }
    return out;
}

int integer(const json& j, const std::string& field) {
    if (!j.is_number_integer()) throw ConfigError(field + ": expected an integer");
    return j.get<int>();
}

std::string text(const json& j, const std::string& field) {
    if (!j.is_string()) throw ConfigError(field + ": expected a string");
    return j.get<std::string>();
}

}  // namespace

RunConfig RunConfig::from_json(const json& j, const fs::path& base_dir) {
    check_keys(j, "config", {"weight", "measure", "degree", "resolution", "r_max", "lattice_r", "ladder", "p", "q", "t",
                             "r", "s", "h", "C", "p0", "criterion", "reference", "proxy", "out"});
    RunConfig c;
    c.base_dir = base_dir;
    if (j.contains("weight")) c.weight = j.at("weight").is_string() ? weight_spec(j.at("weight").get<std::string>()) : j.at("weight");
    if (j.contains("measure"))
        c.measure = j.at("measure").is_string() ? measure_spec(j.at("measure").get<std::string>()) : j.at("measure");
    if (j.contains("degree")) c.degree = integer(j.at("degree"), "degree");
    if (j.contains("resolution")) c.resolution = integer(j.at("resolution"), "resolution");
    if (j.contains("r_max")) c.r_max = to_number(j.at("r_max"), "r_max");
    if (j.contains("lattice_r")) c.lattice_r = to_number(j.at("lattice_r"), "lattice_r");
    if (j.contains("ladder")) {
        const json& l = j.at("ladder");
        check_keys(l, "ladder", {"rings", "samples", "rho0"});
        if (l.contains("rings")) c.ladder.rings = integer(l.at("rings"), "ladder.rings");
        if (l.contains("samples")) c.ladder.samples = integer(l.at("samples"), "ladder.samples");
        if (l.contains("rho0")) c.ladder.rho0 = to_number(l.at("rho0"), "ladder.rho0");
    }
    if (j.contains("p")) c.p = number_list(j.at("p"), "p");
    if (j.contains("q")) c.q = number_list(j.at("q"), "q");
    if (j.contains("t")) c.t = number_list(j.at("t"), "t");
    if (j.contains("r")) c.r = number_list(j.at("r"), "r");
    if (j.contains("s")) c.s = number_list(j.at("s"), "s");
    if (j.contains("h")) c.h = j.at("h");
    if (j.contains("C")) c.C = to_number(j.at("C"), "C");
    if (j.contains("p0")) c.p0 = to_number(j.at("p0"), "p0");
    if (j.contains("criterion")) c.criterion = text(j.at("criterion"), "criterion");
    if (j.contains("reference")) c.reference = text(j.at("reference"), "reference");
    if (j.contains("proxy")) c.proxy = text(j.at("proxy"), "proxy");
    if (j.contains("out")) c.out = text(j.at("out"), "out");
    return c;
}

namespace {

void require_positive_list(const std::vector<double>& v, const char* field) {
    if (v.empty()) throw ConfigError(std::string(field) + ": empty sweep");
    for (double x : v)
        if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(field) + ": values must be positive and finite");
}

void require_open_unit(double v, const char* field) {
    if (!(v > 0.0 && v < 1.0)) throw ConfigError(std::string(field) + ": must lie in (0,1)");
}

}  // namespace

void RunConfig::validate() const {
    const Weight u = weight_from_json(weight, base_dir);
    measure_from_json(measure, u, base_dir);
    if (degree < 0 || degree > 20000) throw ConfigError("degree: must lie in [0, 20000] (0 selects the default)");
    if (resolution < 4 || resolution > 4096) throw ConfigError("resolution: must lie in [4, 4096]");
    require_open_unit(r_max, "r_max");
    require_open_unit(lattice_r, "lattice_r");
    if (ladder.rings < 3 || ladder.rings > 40) throw ConfigError("ladder.rings: must lie in [3, 40]");
    if (ladder.samples < 1 || ladder.samples > 1024) throw ConfigError("ladder.samples: must lie in [1, 1024]");
    require_open_unit(ladder.rho0, "ladder.rho0");
    require_positive_list(p, "p");
    require_positive_list(q, "q");
    require_positive_list(t, "t");
    require_positive_list(s, "s");
    if (r.empty()) throw ConfigError("r: empty sweep");
    for (double x : r) require_open_unit(x, "r");
    const std::string hk = kind_of(h, "h");
    if (hk == "power") {
        check_keys(h, "h", {"kind", "p"});
        if (!(field_number(h, "h", "p") >= 1.0)) throw ConfigError("h.p: must be >= 1");
    } else if (hk == "table") {
        check_keys(h, "h", {"kind", "x", "y"});
        if (!h.contains("x") || !h.contains("y")) throw ConfigError("h: table needs x and y");
        schatten_function(h);
    } else {
        throw ConfigError("h.kind: unknown kind '" + hk + "'");
    }
    if (!(C > 0.0) || !std::isfinite(C)) throw ConfigError("C: must be positive");
    if (!(p0 > 1.0) || !std::isfinite(p0)) throw ConfigError("p0: must exceed 1");
    static const std::set<std::string> criteria = {"consistency", "boundedness", "compactness", "qlp",
                                                   "carleson", "vanishing_carleson", "essential_norm"};
    if (!criteria.count(criterion)) throw ConfigError("criterion: unknown criterion '" + criterion + "'");
    if (reference != "u_dA" && reference != "dA") throw ConfigError("reference: must be u_dA or dA");
    if (proxy != "diagonal" && proxy != "printed") throw ConfigError("proxy: must be diagonal or printed");
    if (out.empty()) throw ConfigError("out: must not be empty");
}

SchattenFunction schatten_function(const json& h) {
    const std::string kind = kind_of(h, "h");
    try {
        if (kind == "power") return SchattenFunction::power(field_number(h, "h", "p"));
        if (kind == "table") return SchattenFunction::table(number_list(h.at("x"), "h.x"), number_list(h.at("y"), "h.y"));
    } catch (const ConfigError& e) {
        const std::string msg = e.what();
        throw ConfigError(msg.rfind("h", 0) == 0 ? msg : "h: " + msg);
    }
    throw ConfigError("h.kind: unknown kind '" + kind + "'");
}

RunConfig load_config(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open " + path.string());
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw ConfigError("config: " + std::string(e.what()));
    }
    return RunConfig::from_json(j, path.parent_path());
}

std::string hash_text(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

std::string config_hash(const json& j) { return hash_text(j.dump()); }

json to_json(const Lattice& L) {
    json pts = json::array();
    for (DiscPoint a : L.points) pts.push_back(point_json(a));
    const LatticeCertificate& c = L.certificate;
    return {{"r", L.radius},
            {"r_max", L.r_max},
            {"points", pts},
            {"multiplicity_bound", L.multiplicity_bound},
            {"certificate",
             {{"disjoint", c.disjoint},
              {"min_separation", number(c.min_separation)},
              {"audit_points", c.audit_points},
              {"covered_points", c.covered_points},
              {"covering_fraction", c.covering_fraction()},
              {"doubled_radius", c.doubled_radius},
              {"max_multiplicity", c.max_multiplicity},
              {"multiplicity_ok", c.multiplicity_ok},
              {"ok", c.ok()}}}};
}

json to_json(const CriterionReport& rep) {
    json j;
    j["name"] = rep.name;
    json params = json::object();
    for (const auto& [k, v] : rep.parameters) params[k] = number(v);
    j["parameters"] = params;
    j["index_value"] = number(rep.index_value);
    j["verdict"] = verdict_name(rep.verdict);
    json values = json::object();
    for (const auto& [k, v] : rep.values) values[k] = number(v);
    j["values"] = values;
    json notes = json::object();
    for (const auto& [k, v] : rep.notes) notes[k] = v;
    j["notes"] = notes;
    json trend = json::array();
    for (const RingValue& rv : rep.ring_trend) trend.push_back(json::array({rv.radius, number(rv.value)}));
    j["ring_trend"] = trend;
    json pts = json::array();
    for (const PointValue& pv : rep.per_point) pts.push_back(json::array({pv.z.real(), pv.z.imag(), number(pv.value)}));
    j["per_point"] = pts;
    json children = json::array();
    for (const CriterionReport& c : rep.children) children.push_back(to_json(c));
    j["children"] = children;
    return j;
}

json to_json(const TransformProfile& prof) {
    json params = json::object();
    for (const auto& [k, v] : prof.parameters) params[k] = number(v);
    return {{"kind", transform_name(prof.kind)}, {"parameters", params}, {"points", prof.grid.size()}};
}

json to_json(const Spectrum& s, std::size_t limit) {
    json ev = json::array();
    const std::size_t n = limit ? std::min(limit, s.eigenvalues.size()) : s.eigenvalues.size();
    for (std::size_t k = 0; k < n; ++k) ev.push_back(number(s.eigenvalues[k]));
    return {{"size", s.eigenvalues.size()}, {"eigenvalues", ev}};
}

json to_json(const WeightConstantReport& rep) {
    json anchors = json::array();
    for (const AnchorValue& a : rep.per_anchor) anchors.push_back(json::array({a.anchor.real(), a.anchor.imag(), number(a.value)}));
    json trend = json::array();
    for (const RingValue& rv : rep.trend) trend.push_back(json::array({rv.radius, number(rv.value)}));
    return {{"p", rep.p},
            {"value", number(rep.value)},
            {"verdict", verdict_name(classify_trend(rep.trend))},
            {"trend", trend},
            {"per_anchor", anchors}};
}

json to_json(const ConsistencyRow& row) {
    return {{"condition", row.condition}, {"applicable", row.applicable}, {"bounded", row.bounded}, {"compact", row.compact}};
}

json model_dump(const KernelModel& m, const json& weight_config) {
    json j;
    j["degree"] = m.degree();
    j["weight"] = weight_config;
    j["gram_residual"] = number(m.gram_residual());
    if (m.radial()) {
        json d = json::array();
        for (double v : m.diagonal_norms()) d.push_back(number(v));
        j["diagonal_norms"] = d;
    } else {
        json rows = json::array();
        for (int r = 0; r <= m.degree(); ++r) {
            json row = json::array();
            for (int c = 0; c <= r; ++c) {
                const cplx v = m.coefficient(r, c);
                row.push_back(json::array({v.real(), v.imag()}));
            }
            rows.push_back(row);
        }
        j["coefficients"] = rows;
    }
    return j;
}

json stamp(json body, const std::string& hash) {
    body["config_hash"] = hash;
    body["tool_version"] = kToolVersion;
    return body;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

void write_text(const fs::path& path, const std::string& text) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

void write_json(const fs::path& path, const json& j) { write_text(path, dump(j)); }

namespace {

std::string fmt(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

}  // namespace

void write_profile_csv(const fs::path& path, const TransformProfile& prof) {
    std::string s = "re,im,value\n";
    for (std::size_t k = 0; k < prof.grid.size(); ++k)
        s += fmt(prof.grid[k].real()) + "," + fmt(prof.grid[k].imag()) + "," + fmt(prof.values[k]) + "\n";
    write_text(path, s);
}

void write_spectrum_csv(const fs::path& path, const Spectrum& sp) {
    std::string s = "k,lambda\n";
    for (std::size_t k = 0; k < sp.eigenvalues.size(); ++k) s += std::to_string(k) + "," + fmt(sp.eigenvalues[k]) + "\n";
    write_text(path, s);
}

void write_trend_csv(const fs::path& path, const std::vector<RingValue>& trend) {
    std::string s = "radius,value\n";
    for (const RingValue& rv : trend) s += fmt(rv.radius) + "," + fmt(rv.value) + "\n";
    write_text(path, s);
}

void write_points_csv(const fs::path& path, const std::vector<PointValue>& pts) {
    std::string s = "re,im,value\n";
    for (const PointValue& pv : pts) s += fmt(pv.z.real()) + "," + fmt(pv.z.imag()) + "," + fmt(pv.value) + "\n";
    write_text(path, s);
}

void write_consistency_csv(const fs::path& path, const std::vector<ConsistencyRow>& rows) {
    std::string s = "condition,applicable,bounded,compact\n";
    for (const ConsistencyRow& r : rows)
        s += r.condition + "," + (r.applicable ? "1" : "0") + "," + (r.bounded ? "1" : "0") + "," + (r.compact ? "1" : "0") + "\n";
    write_text(path, s);
}

}  // namespace bl::io

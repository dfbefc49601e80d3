// SPDX-License-Identifier: Apache-2.0
#include "isac/lab/config.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "isac/errors.hpp"

namespace isac::lab {

namespace pt = boost::property_tree;

namespace {

const std::map<Command, std::string>& command_names() {
    static const std::map<Command, std::string> names = {
        {Command::op_curve, "op-curve"},   {Command::ecr_curve, "ecr-curve"},     {Command::sr_curve, "sr-curve"},
        {Command::region, "region"},       {Command::asymptotics, "asymptotics"}, {Command::table1, "table1"},
    };
    return names;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    int depth = 0;
    for (char ch : s) {
        if (ch == '(') ++depth;
        if (ch == ')') --depth;
        if (ch == sep && depth == 0) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(ch);
        }
    }
    out.push_back(trim(cur));
    return out;
}

double parse_real(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(t, &used);
    } catch (const std::exception&) {
        throw ConfigError("invalid number for '" + key + "': '" + text + "'");
    }
    if (used != t.size() || !std::isfinite(v)) throw ConfigError("invalid number for '" + key + "': '" + text + "'");
    return v;
}

std::size_t parse_count(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (t.empty() || t.find_first_not_of("0123456789") != std::string::npos)
        throw ConfigError("invalid count for '" + key + "': '" + text + "'");
    try {
        return static_cast<std::size_t>(std::stoull(t));
    } catch (const std::exception&) {
        throw ConfigError("invalid count for '" + key + "': '" + text + "'");
    }
}

std::vector<double> parse_list(const std::string& key, const std::string& text) {
    std::vector<double> out;
    for (const auto& item : split(text, ',')) out.push_back(parse_real(key, item));
    return out;
}

cplx parse_entry(const std::string& key, const std::string& text) {
    const std::string t = trim(text);
    if (!t.empty() && t.front() == '(') {
        if (t.back() != ')') throw ConfigError("invalid complex entry for '" + key + "': '" + text + "'");
        const auto parts = split(t.substr(1, t.size() - 2), ',');
        if (parts.size() != 2) throw ConfigError("invalid complex entry for '" + key + "': '" + text + "'");
        return {parse_real(key, parts[0]), parse_real(key, parts[1])};
    }
    return parse_real(key, t);
}

CMatrix parse_matrix(const std::string& key, const std::string& text) {
    std::vector<std::vector<cplx>> rows;
    for (const auto& row : split(text, ';')) {
        std::vector<cplx> r;
        for (const auto& e : split(row, ',')) r.push_back(parse_entry(key, e));
        rows.push_back(std::move(r));
    }
    const std::size_t n = rows.size();
    CMatrix m(n, rows.front().size());
    for (std::size_t i = 0; i < n; ++i) {
        if (rows[i].size() != m.cols()) throw ConfigError("'" + key + "' has rows of different lengths");
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Section {
public:
    Section(const pt::ptree& root, const std::string& name, std::set<std::string> allowed) : name_(name) {
        if (const auto child = root.get_child_optional(name)) {
            for (const auto& [key, value] : *child) {
                if (!value.empty()) throw ConfigError("unexpected nesting under [" + name + "] " + key);
                if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in [" + name + "]");
                values_[key] = value.data();
            }
        }
    }

    std::optional<std::string> get(const std::string& key) const {
        const auto it = values_.find(key);
        if (it == values_.end()) return std::nullopt;
        return it->second;
    }

    std::string require(const std::string& key) const {
        auto v = get(key);
        if (!v) throw ConfigError("missing key '" + key + "' in [" + name_ + "]");
        return *v;
    }

    std::string qualified(const std::string& key) const { return name_ + "." + key; }

private:
    std::string name_;
    std::map<std::string, std::string> values_;
};

}  // namespace

std::string to_string(Command c) { return command_names().at(c); }

std::optional<Command> parse_command(const std::string& name) {
    for (const auto& [c, n] : command_names())
        if (n == name) return c;
    return std::nullopt;
}

std::vector<double> SweepSpec::grid_db() const {
    if (!(step_db > 0.0)) throw ConfigError("step > 0 violated: step_db=" + fmt(step_db));
    if (!(stop_db >= start_db)) throw ConfigError("stop >= start violated: start_db=" + fmt(start_db) + ", stop_db=" + fmt(stop_db));
    const auto n = static_cast<std::size_t>(std::floor((stop_db - start_db) / step_db + 1e-9)) + 1;
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) g[i] = start_db + static_cast<double>(i) * step_db;
    return g;
}

std::size_t default_trials(Command c) {
    switch (c) {
        case Command::op_curve: return 1'000'000;
        case Command::ecr_curve: return 100'000;
        case Command::region: return 100'000;
        case Command::sr_curve:
        case Command::asymptotics:
        case Command::table1: return 1;
    }
    return 1;
}

SweepSpec default_sweep(Command c) {
    SweepSpec s;
    switch (c) {
        case Command::op_curve: s.start_db = 0.0; s.stop_db = 30.0; s.step_db = 2.0; break;
        case Command::ecr_curve: s.start_db = 0.0; s.stop_db = 40.0; s.step_db = 5.0; break;
        case Command::sr_curve: s.start_db = 0.0; s.stop_db = 60.0; s.step_db = 5.0; break;
        default: break;
    }
    return s;
}

ExperimentSpec parse_experiment(Command command, const std::string& text) {
    pt::ptree root;
    try {
        std::istringstream in(text);
        pt::ini_parser::read_ini(in, root);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
    for (const auto& [name, child] : root) {
        if (name != "system" && name != "sweep" && name != "run")
            throw ConfigError("unknown section [" + name + "] (expected [system], [sweep], [run])");
        if (child.empty()) throw ConfigError("key '" + name + "' outside any section");
    }
    if (!root.get_child_optional("system")) throw ConfigError("missing section [system]");

    const Section sys(root, "system", {"M", "N", "K", "L", "pc", "pc_db", "ps", "ps_db", "alpha", "r_eigenvalues", "r_matrix", "sic_order"});
    const Section sweep(root, "sweep", {"start_db", "stop_db", "step_db", "rate_target", "fdsac_alpha", "grid_points"});
    const Section run(root, "run", {"trials", "seed", "workers"});

    ExperimentSpec spec;
    spec.command = command;
    spec.sweep = default_sweep(command);
    spec.trials = default_trials(command);

    SystemConfig& cfg = spec.cfg;
    cfg.M = parse_count("M", sys.require("M"));
    cfg.N = parse_count("N", sys.require("N"));
    cfg.K = parse_count("K", sys.require("K"));
    cfg.L = parse_count("L", sys.require("L"));

    auto power = [&](const char* linear, const char* db) {
        const auto lin = sys.get(linear);
        const auto dbv = sys.get(db);
        if (lin && dbv) throw ConfigError(std::string("give only one of '") + linear + "' and '" + db + "'");
        if (lin) return parse_real(linear, *lin);
        if (dbv) return db_to_linear(parse_real(db, *dbv));
        throw ConfigError(std::string("missing key '") + db + "' (or '" + linear + "') in [system]");
    };
    cfg.pc = power("pc", "pc_db");
    cfg.ps = power("ps", "ps_db");
    cfg.alpha = parse_list("alpha", sys.require("alpha"));

    const auto eigs = sys.get("r_eigenvalues");
    const auto mat = sys.get("r_matrix");
    if (eigs && mat) throw ConfigError("give only one of 'r_eigenvalues' and 'r_matrix'");
    if (eigs) {
        cfg.R = correlation_from_eigenvalues(parse_list("r_eigenvalues", *eigs));
    } else if (mat) {
        cfg.R = parse_matrix("r_matrix", *mat);
    } else {
        throw ConfigError("missing key 'r_eigenvalues' (or 'r_matrix') in [system]");
    }
    if (const auto o = sys.get("sic_order")) cfg.sic_order = parse_sic_order(trim(*o));

    if (auto v = sweep.get("start_db")) spec.sweep.start_db = parse_real("start_db", *v);
    if (auto v = sweep.get("stop_db")) spec.sweep.stop_db = parse_real("stop_db", *v);
    if (auto v = sweep.get("step_db")) spec.sweep.step_db = parse_real("step_db", *v);
    if (auto v = sweep.get("rate_target")) spec.sweep.rate_target = parse_real("rate_target", *v);
    if (auto v = sweep.get("fdsac_alpha")) spec.sweep.fdsac_alpha = parse_real("fdsac_alpha", *v);
    if (auto v = sweep.get("grid_points")) spec.sweep.grid_points = parse_count("grid_points", *v);
    if (auto v = run.get("trials")) spec.trials = parse_count("trials", *v);
    if (auto v = run.get("seed")) spec.seed = parse_count("seed", *v);
    if (auto v = run.get("workers")) spec.workers = static_cast<unsigned>(parse_count("workers", *v));

    validate_config(cfg);
    spec.sweep.grid_db();
    if (spec.trials == 0) throw ConfigError("trials >= 1 violated: trials=0");
    if (!(spec.sweep.rate_target >= 0.0)) throw ConfigError("rate_target >= 0 violated: rate_target=" + fmt(spec.sweep.rate_target));
    if (!(spec.sweep.fdsac_alpha >= 0.0 && spec.sweep.fdsac_alpha <= 1.0))
        throw ConfigError("0 <= fdsac_alpha <= 1 violated: fdsac_alpha=" + fmt(spec.sweep.fdsac_alpha));
    if (spec.sweep.grid_points < 2) throw ConfigError("grid_points >= 2 violated: grid_points=" + std::to_string(spec.sweep.grid_points));
    return spec;
}

ExperimentSpec load_experiment(Command command, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot read config file '" + path.string() + "'");
    std::ostringstream text;
    text << in.rdbuf();
    return parse_experiment(command, text.str());
}

std::string describe(const ExperimentSpec& spec) {
    const SystemConfig& c = spec.cfg;
    std::ostringstream os;
    auto list = [](const std::vector<double>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v[i]);
        return s;
    };
    os << "[system]\n";
    os << "M = " << c.M << "\nN = " << c.N << "\nK = " << c.K << "\nL = " << c.L << '\n';
    os << "pc = " << fmt(c.pc) << "\nps = " << fmt(c.ps) << '\n';
    os << "alpha = " << list(c.alpha) << '\n';
    os << "r_matrix = ";
    for (std::size_t i = 0; i < c.R.rows(); ++i) {
        if (i) os << "; ";
        for (std::size_t j = 0; j < c.R.cols(); ++j) {
            if (j) os << ", ";
            const cplx v = c.R(i, j);
            if (v.imag() == 0.0) os << fmt(v.real());
            else os << '(' << fmt(v.real()) << ',' << fmt(v.imag()) << ')';
        }
    }
    os << "\nsic_order = " << to_string(c.sic_order) << '\n';
    os << "\n[sweep]\n";
    os << "start_db = " << fmt(spec.sweep.start_db) << "\nstop_db = " << fmt(spec.sweep.stop_db)
       << "\nstep_db = " << fmt(spec.sweep.step_db) << "\nrate_target = " << fmt(spec.sweep.rate_target)
       << "\nfdsac_alpha = " << fmt(spec.sweep.fdsac_alpha) << "\ngrid_points = " << spec.sweep.grid_points << '\n';
    os << "\n[run]\ntrials = " << spec.trials << "\nseed = " << spec.seed << '\n';
    return os.str();
}

}  // namespace isac::lab

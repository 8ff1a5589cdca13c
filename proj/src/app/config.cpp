#include "kjc/app/config.hpp"

#include "kjc/operator_core.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>

namespace kjc::app {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto* first = v.data();
    const auto* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last || !std::isfinite(out)) {
        throw ConfigError("config key '" + key + "': expected a finite real number, got '" + v + "'");
    }
    return out;
}

long long to_integer(const std::string& key, const std::string& v) {
    long long out = 0;
    const auto* first = v.data();
    const auto* last = v.data() + v.size();
    if (!v.empty() && *first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, out);
    if (ec != std::errc{} || ptr != last) {
        throw ConfigError("config key '" + key + "': expected an integer, got '" + v + "'");
    }
    return out;
}

int to_int(const std::string& key, const std::string& v, long long lo) {
    const long long x = to_integer(key, v);
    if (x < lo || x > 1'000'000'000LL) {
        throw ConfigError("config key '" + key + "': value " + v + " out of range (>= " + std::to_string(lo) + ")");
    }
    return static_cast<int>(x);
}

double positive(const std::string& key, double x) {
    if (!(x > 0)) throw ConfigError("config key '" + key + "': must be > 0");
    return x;
}

double non_negative(const std::string& key, double x) {
    if (!(x >= 0)) throw ConfigError("config key '" + key + "': must be >= 0");
    return x;
}

}  // namespace

KeyValueConfig KeyValueConfig::parse(std::istream& in, const std::string& source) {
    KeyValueConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(source + ":" + std::to_string(lineno) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError(source + ":" + std::to_string(lineno) + ": empty key");
        cfg.set(key, trim(line.substr(eq + 1)));
    }
    return cfg;
}

KeyValueConfig KeyValueConfig::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    return parse(in, path);
}

void KeyValueConfig::set(const std::string& key, const std::string& value) { values_[key] = value; }

Command parse_command(const std::string& name) {
    if (name == "spectrum") return Command::spectrum;
    if (name == "evolve") return Command::evolve;
    if (name == "sweep") return Command::sweep;
    if (name == "strobe") return Command::strobe;
    if (name == "resonances") return Command::resonances;
    throw ConfigError("unknown command '" + name + "' (spectrum|evolve|sweep|strobe|resonances)");
}

std::string command_name(Command c) {
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::evolve: return "evolve";
        case Command::sweep: return "sweep";
        case Command::strobe: return "strobe";
        case Command::resonances: return "resonances";
    }
    return "?";
}

std::string sweep_kind_name(SweepKind k) {
    switch (k) {
        case SweepKind::quantum: return "quantum";
        case SweepKind::classical: return "classical";
        case SweepKind::observables: return "observables";
    }
    return "?";
}

BareState parse_bare_state(const std::string& text) {
    const auto bad = [&] { return ConfigError("config key 'initial_state': expected e.g. 'g2;g0', got '" + text + "'"); };
    const auto semi = text.find(';');
    if (semi == std::string::npos) throw bad();
    auto cavity = [&](const std::string& part, Atom& atom, int& photons) {
        const std::string t = trim(part);
        if (t.size() < 2 || (t[0] != 'g' && t[0] != 'e')) throw bad();
        atom = t[0] == 'g' ? Atom::g : Atom::e;
        const auto [ptr, ec] = std::from_chars(t.data() + 1, t.data() + t.size(), photons);
        if (ec != std::errc{} || ptr != t.data() + t.size() || photons < 0) throw bad();
    };
    BareState s;
    cavity(text.substr(0, semi), s.atom1, s.photons1);
    cavity(text.substr(semi + 1), s.atom2, s.photons2);
    return s;
}

std::string format_real(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

SystemParams RunConfig::params() const {
    SystemParams p;
    p.beta = beta;
    p.delta = delta;
    p.period_T = betaT / beta;
    p.kappa_tau = kappa_tau;
    p.kick_sign = kick_sign;
    return p;
}

std::vector<std::pair<std::string, std::string>> RunConfig::resolved() const {
    std::vector<std::pair<std::string, std::string>> out = {
        {"command", command_name(command)},
        {"beta", format_real(beta)},
        {"delta", format_real(delta)},
        {"betaT", format_real(betaT)},
        {"kappa_tau", format_real(kappa_tau)},
        {"L", std::to_string(L)},
        {"n_kicks", std::to_string(n_kicks)},
        {"substeps", std::to_string(substeps)},
        {"kick_sign", std::to_string(kick_sign)},
        {"classical_kick", std::string(classical::kick_convention_name(classical_kick))},
        {"seed", std::to_string(seed)},
        {"initial_state", to_string(initial_state)},
        {"kind", sweep_kind_name(kind)},
        {"kappa_tau_min", format_real(kappa_tau_axis.min)},
        {"kappa_tau_max", format_real(kappa_tau_axis.max)},
        {"kappa_tau_points", std::to_string(kappa_tau_axis.points)},
        {"betaT_min", format_real(betaT_axis.min)},
        {"betaT_max", format_real(betaT_axis.max)},
        {"betaT_points", std::to_string(betaT_axis.points)},
        {"burn_in", std::to_string(burn_in)},
        {"n_seeds", std::to_string(n_seeds)},
        {"n_max", std::to_string(n_max)},
        {"resonance_scale", format_real(resonance_scale)},
    };
    return out;
}

RunConfig resolve(Command command, const KeyValueConfig& kv) {
    RunConfig rc;
    rc.command = command;
    if (command == Command::strobe) rc.n_kicks = 200;
    if (command == Command::sweep) rc.n_kicks = 1000;

    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters = {
        {"beta", [&](auto& k, auto& v) { rc.beta = positive(k, to_double(k, v)); }},
        {"delta", [&](auto& k, auto& v) { rc.delta = to_double(k, v); }},
        {"betaT", [&](auto& k, auto& v) { rc.betaT = positive(k, to_double(k, v)); }},
        {"kappa_tau", [&](auto& k, auto& v) { rc.kappa_tau = non_negative(k, to_double(k, v)); }},
        {"L", [&](auto& k, auto& v) { rc.L = to_int(k, v, 1); }},
        {"n_kicks", [&](auto& k, auto& v) { rc.n_kicks = to_int(k, v, 1); }},
        {"substeps", [&](auto& k, auto& v) { rc.substeps = to_int(k, v, 0); }},
        {"kick_sign",
         [&](auto& k, auto& v) {
             const long long s = to_integer(k, v);
             if (s != 1 && s != -1) throw ConfigError("config key 'kick_sign': must be +1 or -1");
             rc.kick_sign = static_cast<int>(s);
         }},
        {"classical_kick",
         [&](auto& k, auto& v) {
             if (v != "rotation" && v != "unitary") {
                 throw ConfigError("config key '" + k + "': expected rotation|unitary, got '" + v + "'");
             }
             rc.classical_kick = classical::parse_kick_convention(v);
         }},
        {"seed",
         [&](auto& k, auto& v) {
             std::uint64_t s = 0;
             const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), s);
             if (ec != std::errc{} || ptr != v.data() + v.size()) {
                 throw ConfigError("config key '" + k + "': expected an unsigned 64-bit integer, got '" + v + "'");
             }
             rc.seed = s;
         }},
        {"threads", [&](auto& k, auto& v) { rc.threads = to_int(k, v, 0); }},
        {"initial_state", [&](auto&, auto& v) { rc.initial_state = parse_bare_state(v); }},
        {"kind",
         [&](auto& k, auto& v) {
             if (v == "quantum") rc.kind = SweepKind::quantum;
             else if (v == "classical") rc.kind = SweepKind::classical;
             else if (v == "observables") rc.kind = SweepKind::observables;
             else throw ConfigError("config key '" + k + "': expected quantum|classical|observables, got '" + v + "'");
         }},
        {"kappa_tau_min", [&](auto& k, auto& v) { rc.kappa_tau_axis.min = non_negative(k, to_double(k, v)); }},
        {"kappa_tau_max", [&](auto& k, auto& v) { rc.kappa_tau_axis.max = non_negative(k, to_double(k, v)); }},
        {"kappa_tau_points", [&](auto& k, auto& v) { rc.kappa_tau_axis.points = to_int(k, v, 1); }},
        {"betaT_min", [&](auto& k, auto& v) { rc.betaT_axis.min = non_negative(k, to_double(k, v)); }},
        {"betaT_max", [&](auto& k, auto& v) { rc.betaT_axis.max = non_negative(k, to_double(k, v)); }},
        {"betaT_points", [&](auto& k, auto& v) { rc.betaT_axis.points = to_int(k, v, 1); }},
        {"burn_in", [&](auto& k, auto& v) { rc.burn_in = to_int(k, v, 0); }},
        {"n_seeds", [&](auto& k, auto& v) { rc.n_seeds = to_int(k, v, 1); }},
        {"n_max", [&](auto& k, auto& v) { rc.n_max = to_int(k, v, 1); }},
        {"resonance_scale", [&](auto& k, auto& v) { rc.resonance_scale = positive(k, to_double(k, v)); }},
    };

    // L first, so the initial-state default can follow it.
    if (const auto it = kv.values().find("L"); it != kv.values().end()) setters.at("L")(it->first, it->second);
    rc.initial_state = {Atom::g, rc.L, Atom::g, 0};
    for (const auto& [key, value] : kv.values()) {
        const auto it = setters.find(key);
        if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
        it->second(key, value);
    }

    if (command == Command::sweep && rc.kind == SweepKind::observables && !kv.has("n_kicks")) rc.n_kicks = 2000;

    // Cross-field checks.
    if (rc.initial_state.excitations() != rc.L) {
        throw ConfigError("config key 'initial_state': " + to_string(rc.initial_state) + " does not hold L = " +
                          std::to_string(rc.L) + " excitations");
    }
    for (const auto& [name, axis] : {std::pair{"kappa_tau", &rc.kappa_tau_axis}, std::pair{"betaT", &rc.betaT_axis}}) {
        if (axis->points > 1 && !(axis->max > axis->min)) {
            throw ConfigError(std::string("config key '") + name + "_max': must exceed " + name + "_min");
        }
    }
    if (command == Command::sweep && rc.kind != SweepKind::observables && rc.betaT_axis.min <= 0 &&
        rc.betaT_axis.points >= 1) {
        throw ConfigError("config key 'betaT_min': beta*T must be > 0");
    }
    if (command == Command::sweep && rc.kind == SweepKind::observables && rc.burn_in >= rc.n_kicks) {
        throw ConfigError("config key 'burn_in': must be smaller than n_kicks");
    }
    try {
        rc.params().validate();
    } catch (const InvalidInput& e) {
        throw ConfigError(e.what());
    }
    return rc;
}

}  // namespace kjc::app

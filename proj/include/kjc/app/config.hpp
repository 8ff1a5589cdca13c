#pragma once

// Flat key = value configuration and its validated, resolved form.

#include "kjc/classical.hpp"
#include "kjc/sector.hpp"

#include <cstdint>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace kjc::app {

// Invalid configuration; the message names the offending key.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Raw key/value store. Later assignments win, so command-line overrides are
// applied with set() after parsing the file.
class KeyValueConfig {
public:
    // '#' starts a comment; blank lines ignored; each other line is `key = value`.
    static KeyValueConfig parse(std::istream& in, const std::string& source = "<config>");
    static KeyValueConfig load(const std::string& path);

    void set(const std::string& key, const std::string& value);
    bool has(const std::string& key) const { return values_.count(key) > 0; }
    const std::map<std::string, std::string>& values() const { return values_; }

private:
    std::map<std::string, std::string> values_;
};

enum class Command { spectrum, evolve, sweep, strobe, resonances };
enum class SweepKind { quantum, classical, observables };

Command parse_command(const std::string& name);
std::string command_name(Command c);
std::string sweep_kind_name(SweepKind k);

struct AxisSpec {
    double min = 0.0;
    double max = 1.0;
    int points = 11;
};

struct RunConfig {
    Command command = Command::spectrum;

    double beta = 1.0;
    double delta = 0.0;
    double betaT = 1.2;
    double kappa_tau = 0.1;
    int L = 2;
    int n_kicks = 1000;
    int substeps = 0;  // 0: automatic
    int kick_sign = -1;
    classical::KickConvention classical_kick = classical::KickConvention::rotation;
    std::uint64_t seed = 1;
    int threads = 1;

    // evolve
    BareState initial_state{Atom::g, 2, Atom::g, 0};

    // sweep
    SweepKind kind = SweepKind::quantum;
    AxisSpec kappa_tau_axis{0.0, 1.0, 11};
    AxisSpec betaT_axis{0.1, 7.0, 11};
    int burn_in = 100;

    // strobe
    int n_seeds = 5;

    // resonances
    int n_max = 3;
    double resonance_scale = 6.283185307179586;

    SystemParams params() const;

    // Every key in a stable order with its resolved value, for CSV headers.
    std::vector<std::pair<std::string, std::string>> resolved() const;
};

// Validates every key and value; throws ConfigError on unknown keys or values
// that violate parameter invariants. Unset keys keep command defaults (the
// initial state defaults to all L excitations as photons in cavity 1).
RunConfig resolve(Command command, const KeyValueConfig& kv);

// Parses "g2;g0" style kets.
BareState parse_bare_state(const std::string& text);

// "%.17g": 17 significant digits, round-trips every double.
std::string format_real(double v);

}  // namespace kjc::app

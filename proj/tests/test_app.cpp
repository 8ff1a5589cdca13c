#include "kjc/app/commands.hpp"

#include <doctest.h>

#include <sstream>
#include <string>
#include <vector>

using namespace kjc;
using namespace kjc::app;

namespace {

KeyValueConfig parse(const std::string& text) {
    std::istringstream in(text);
    return KeyValueConfig::parse(in);
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string run(Command c, const std::string& text) {
    std::ostringstream out;
    run_command(resolve(c, parse(text)), out);
    return out.str();
}

void check_error_names_key(Command c, const std::string& text, const std::string& key) {
    try {
        resolve(c, parse(text));
        FAIL("expected ConfigError for " << text);
    } catch (const ConfigError& e) {
        CHECK_MESSAGE(std::string(e.what()).find(key) != std::string::npos, e.what());
    }
}

}  // namespace

TEST_CASE("KeyValueConfig: comments, whitespace and later assignments") {
    const auto kv = parse("# header\n  beta = 2.5   # trailing\n\nL=3\nL = 4\n");
    CHECK(kv.values().at("beta") == "2.5");
    CHECK(kv.values().at("L") == "4");
    CHECK(kv.has("L"));
    CHECK_FALSE(kv.has("delta"));
    CHECK_THROWS_AS(parse("beta 2.5\n"), ConfigError);
    CHECK_THROWS_AS(parse(" = 3\n"), ConfigError);
    CHECK_THROWS_AS(KeyValueConfig::load("/nonexistent/kjc.cfg"), ConfigError);
}

TEST_CASE("resolve: defaults and overrides") {
    const auto cfg = resolve(Command::evolve, parse("betaT = 0.7\nkappa_tau = 0.25\nL = 3\n"));
    CHECK(cfg.betaT == 0.7);
    CHECK(cfg.kappa_tau == 0.25);
    CHECK(cfg.initial_state == BareState{Atom::g, 3, Atom::g, 0});
    const auto p = cfg.params();
    CHECK(p.beta_T() == doctest::Approx(0.7));
    CHECK(p.kick_sign == -1);

    CHECK(resolve(Command::strobe, {}).n_kicks == 200);
    CHECK(resolve(Command::sweep, parse("kind = observables\n")).n_kicks == 2000);
    CHECK(resolve(Command::sweep, parse("kind = observables\nn_kicks = 500\n")).n_kicks == 500);
    CHECK(resolve(Command::spectrum, parse("initial_state = e0;g1\nL = 2\n")).initial_state ==
          BareState{Atom::e, 0, Atom::g, 1});
}

TEST_CASE("resolve: invalid values name the offending key") {
    check_error_names_key(Command::spectrum, "beta = -1\n", "beta");
    check_error_names_key(Command::spectrum, "beta = abc\n", "beta");
    check_error_names_key(Command::spectrum, "kappa_tau = -0.2\n", "kappa_tau");
    check_error_names_key(Command::spectrum, "betaT = 0\n", "betaT");
    check_error_names_key(Command::spectrum, "L = 0\n", "L");
    check_error_names_key(Command::spectrum, "n_kicks = 1.5\n", "n_kicks");
    check_error_names_key(Command::spectrum, "kick_sign = 0\n", "kick_sign");
    check_error_names_key(Command::spectrum, "classical_kick = mirror\n", "classical_kick");
    check_error_names_key(Command::spectrum, "colour = blue\n", "colour");
    check_error_names_key(Command::spectrum, "initial_state = g1;g0\n", "initial_state");
    check_error_names_key(Command::sweep, "kind = fractal\n", "kind");
    check_error_names_key(Command::sweep, "kappa_tau_min = 1\nkappa_tau_max = 0.5\n", "kappa_tau_max");
    check_error_names_key(Command::sweep, "kind = observables\nburn_in = 3000\n", "burn_in");
    CHECK_THROWS_AS(parse_command("plot"), ConfigError);
}

TEST_CASE("parse_bare_state and format_real") {
    CHECK(parse_bare_state("g2;g0") == BareState{Atom::g, 2, Atom::g, 0});
    CHECK(parse_bare_state("e1;e0") == BareState{Atom::e, 1, Atom::e, 0});
    CHECK_THROWS(parse_bare_state("x1;g0"));
    CHECK_THROWS(parse_bare_state("g1"));
    CHECK(format_real(0.1) == "0.10000000000000001");
    CHECK(format_real(2.0) == "2");
    CHECK(std::stod(format_real(M_PI)) == M_PI);
}

TEST_CASE("spectrum: header, columns and one row per Floquet state") {
    const auto out = lines(run(Command::spectrum, "betaT = 1.2\nkappa_tau = 0.1\n"));
    REQUIRE(out.size() == 10);
    CHECK(out[0].rfind("# kjc ", 0) == 0);
    CHECK(out[0].find("command=spectrum") != std::string::npos);
    CHECK(out[0].find("betaT=1.2") != std::string::npos);
    CHECK(out[0].find(std::string(version())) != std::string::npos);
    CHECK(out[1] == "index,eigenphase_rad,participation,psi2_weight");
}

TEST_CASE("evolve, sweep, strobe and resonances: column headers and row counts") {
    auto ev = lines(run(Command::evolve, "n_kicks = 10\n"));
    REQUIRE(ev.size() == 13);
    CHECK(ev[1] == "kick,exp_n1,exp_excitations_cav1,exp_proj_psi2,norm_residual");
    CHECK(ev[2].rfind("0,2,2,1,", 0) == 0);

    auto sw = lines(run(Command::sweep,
                        "kappa_tau_points = 2\nbetaT_points = 3\nbetaT_min = 0.5\nbetaT_max = 1.5\n"));
    REQUIRE(sw.size() == 2 + 6);
    CHECK(sw[1] == "kappa_tau,betaT,value,status");
    CHECK(sw[2].rfind("0,0.5,0.125", 0) == 0);

    auto st = lines(run(Command::strobe, "n_kicks = 4\nn_seeds = 2\n"));
    REQUIRE(st.size() == 2 + 2 * 5);
    CHECK(st[1] ==
          "seed_id,kick,re_E1,im_E1,re_E2,im_E2,re_S1,im_S1,re_S2,im_S2,Sz1,Sz2,N1,N2,bloch_residual_1,"
          "bloch_residual_2");

    auto rs = lines(run(Command::resonances, "n_max = 2\n"));
    REQUIRE(rs.size() == 2 + 6);
    CHECK(rs[1] == "family,n,predicted_T");
}

TEST_CASE("identical configs give byte-identical CSV") {
    const std::string cfg = "kappa_tau_points = 3\nbetaT_points = 3\nkind = classical\nn_kicks = 40\n";
    CHECK(run(Command::sweep, cfg) == run(Command::sweep, cfg));
    CHECK(run(Command::sweep, cfg + "threads = 1\n") == run(Command::sweep, cfg + "threads = 3\n"));
    CHECK(run(Command::strobe, "seed = 7\n") == run(Command::strobe, "seed = 7\n"));
    CHECK(run(Command::strobe, "seed = 7\n") != run(Command::strobe, "seed = 8\n"));
}

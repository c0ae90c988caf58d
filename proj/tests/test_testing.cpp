#include <doctest.h>

#include <set>

#include "oracles.hpp"
#include "ultras/testing.hpp"

using namespace ultras;

namespace {

ObservationSystem observer(const std::string& calculus, const std::string& term) {
    auto env = parse_model("calculus " + calculus + "\ninit " + term + "\n", ModelRole::observer);
    return make_observation_system(term, env);
}

std::vector<std::string> tr(std::initializer_list<const char*> actions) {
    return std::vector<std::string>(actions.begin(), actions.end());
}

}  // namespace

TEST_CASE("delta validation and defaults") {
    CHECK(default_delta(DomainKind::boolean) == DeltaKind::conjunction);
    CHECK(default_delta(DomainKind::probability) == DeltaKind::product);
    CHECK(default_delta(DomainKind::rate) == DeltaKind::product);

    CHECK_NOTHROW(validate_delta(DeltaKind::conjunction, DomainKind::boolean));
    CHECK_NOTHROW(validate_delta(DeltaKind::product, DomainKind::probability));
    CHECK_NOTHROW(validate_delta(DeltaKind::minimum, DomainKind::rate));
    CHECK_NOTHROW(validate_delta(DeltaKind::product, DomainKind::rate));
    CHECK_THROWS_AS(validate_delta(DeltaKind::conjunction, DomainKind::rate), ContractViolation);
    CHECK_THROWS_AS(validate_delta(DeltaKind::product, DomainKind::boolean), ContractViolation);
    CHECK_THROWS_AS(validate_delta(DeltaKind::minimum, DomainKind::boolean), ContractViolation);

    CHECK(apply_delta(DeltaKind::product, DomainKind::rate, Rational(2), Rational(3)) == 6);
    CHECK(apply_delta(DeltaKind::minimum, DomainKind::rate, Rational(2), Rational(3)) == 2);
    CHECK(apply_delta(DeltaKind::conjunction, DomainKind::boolean, Rational(1), Rational(0)) == 0);

    SUBCASE("bottom is absorbing on either side") {
        for (DeltaKind d : {DeltaKind::product, DeltaKind::minimum}) {
            CHECK(apply_delta(d, DomainKind::rate, Rational(0), Rational(5)) == 0);
            CHECK(apply_delta(d, DomainKind::rate, Rational(5), Rational(0)) == 0);
        }
        CHECK(apply_delta(DeltaKind::conjunction, DomainKind::boolean, Rational(0), Rational(1)) == 0);
    }
}

TEST_CASE("observation systems") {
    SUBCASE("a.OMEGA") {
        ObservationSystem obs = observer("csp", "a.OMEGA");
        CHECK(obs.name == "a.OMEGA");
        CHECK(obs.graph.state_count() == 2);
        CHECK(obs.init_state == 0);
        CHECK(obs.graph.label(obs.omega_state) == "OMEGA");
        CHECK(obs.graph.dist(obs.init_state, "a").value(obs.omega_state) == 1);
        // success is inert: no row of OMEGA moves anywhere
        for (const std::string& a : obs.graph.alphabet())
            CHECK(obs.graph.dist(obs.omega_state, a).empty());
    }
    SUBCASE("an observer that never succeeds still has an OMEGA state") {
        ObservationSystem obs = observer("csp", "a.stop");
        CHECK(obs.graph.state_count() == 3);
        CHECK(obs.omega_state == 2);
        CHECK(obs.graph.label(2) == "OMEGA");
        for (StateId s = 0; s < 2; ++s)
            for (const std::string& a : obs.graph.alphabet())
                CHECK(obs.graph.dist(s, a).value(obs.omega_state) == 0);
    }
    SUBCASE("systems are rejected") {
        auto env = parse_model("calculus csp\ninit a.stop\n");
        CHECK_THROWS_AS(make_observation_system("x", env), ContractViolation);
    }
}

TEST_CASE("interaction systems") {
    SUBCASE("boolean conjunction") {
        auto env = parse_model("calculus csp\ninit a.b.stop\n");
        Exploration sys = explore(env);
        ObservationSystem obs = observer("csp", "a.b.OMEGA");
        std::vector<StateId> roots{sys.roots[0]};
        InteractionSystem in = build_interaction(sys.graph, roots, obs, DeltaKind::conjunction);

        CHECK(in.graph.state_count() == 3);
        CHECK(in.graph.state_count() <= sys.graph.state_count() * obs.graph.state_count());
        CHECK(in.graph.label(in.roots[0]) == "(a.b.stop , a.b.OMEGA)");
        CHECK(in.successful == std::vector<bool>{false, false, true});

        auto a = tr({"a"});
        auto ab = tr({"a", "b"});
        CHECK(testing_measure(in, in.roots[0], a) == DomainValue::bottom(DomainKind::boolean));
        CHECK(testing_measure(in, in.roots[0], ab) == DomainValue::unit(DomainKind::boolean));
    }
    SUBCASE("probabilities multiply and full success mass is 1") {
        auto env = parse_model("calculus pcsp\ninit a.stop +(3/10) a.b.stop\n");
        Exploration sys = explore(env);
        ObservationSystem obs = observer("pcsp", "a.OMEGA");
        InteractionSystem in = build_interaction(sys.graph, sys.roots, obs, DeltaKind::product);

        auto a = tr({"a"});
        CHECK(testing_measure(in, in.roots[0], {}).value == 0);
        CHECK(testing_measure(in, in.roots[0], a).value == 1);
    }
    SUBCASE("a test selects one probabilistic branch") {
        auto env = parse_model("calculus pcsp\ninit a.b.stop +(3/10) a.c.stop\n");
        Exploration sys = explore(env);
        ObservationSystem obs = observer("pcsp", "a.b.OMEGA");
        InteractionSystem in = build_interaction(sys.graph, sys.roots, obs, DeltaKind::product);
        auto ab = tr({"a", "b"});
        CHECK(testing_measure(in, in.roots[0], ab).value == Rational(3, 10));
    }
    SUBCASE("rate deltas") {
        auto env = parse_model("calculus pepa\ninit (a,2).stop\n");
        Exploration sys = explore(env);
        ObservationSystem obs = observer("pepa", "(a,3).OMEGA");
        auto a = tr({"a"});

        InteractionSystem prod = build_interaction(sys.graph, sys.roots, obs, DeltaKind::product);
        CHECK(testing_measure(prod, prod.roots[0], a).value == 6);

        InteractionSystem mini = build_interaction(sys.graph, sys.roots, obs, DeltaKind::minimum);
        CHECK(testing_measure(mini, mini.roots[0], a).value == 2);
    }
    SUBCASE("successful configurations are inert") {
        auto env = parse_model("calculus csp\nconst B = a.B\ninit B\n");
        Exploration sys = explore(env);
        ObservationSystem obs = observer("csp", "a.OMEGA");
        InteractionSystem in = build_interaction(sys.graph, sys.roots, obs, DeltaKind::conjunction);
        for (StateId c = 0; c < in.graph.state_count(); ++c) {
            if (!in.successful[c]) continue;
            for (std::size_t a = 0; a < in.graph.alphabet().size(); ++a)
                CHECK(in.graph.dist(c, a).empty());
        }
    }
    SUBCASE("mismatched domains and budgets") {
        auto env = parse_model("calculus csp\nconst B = a.B\ninit B\n");
        Exploration sys = explore(env);
        ObservationSystem obs = observer("pepa", "(a,1).OMEGA");
        CHECK_THROWS_AS(build_interaction(sys.graph, sys.roots, obs, DeltaKind::minimum),
                        ContractViolation);

        ObservationSystem ok = observer("csp", "a.a.a.OMEGA");
        ExplorationConfig cfg;
        cfg.max_states = 2;
        CHECK_THROWS_AS(build_interaction(sys.graph, sys.roots, ok, DeltaKind::conjunction, cfg),
                        BudgetExceededError);
    }
}

TEST_CASE("testing equivalence") {
    SUBCASE("a success-free battery distinguishes nothing") {
        auto env = parse_model("calculus csp\ninit stop\n");
        std::vector<TermPtr> roots{parse_term(env, "a.stop"), parse_term(env, "b.stop")};
        Exploration sys = explore(env, roots);
        std::vector<ObservationSystem> battery;
        battery.push_back(observer("csp", "a.stop"));
        auto v = testing_equiv(sys.graph, sys.roots[0], sys.roots[1], battery,
                               DeltaKind::conjunction, 6);
        CHECK(v.equivalent);
        CHECK(format_verdict(v) == "EQUIVALENT depth=6");
    }
    SUBCASE("a.OMEGA separates a.stop from b.stop") {
        auto env = parse_model("calculus csp\ninit stop\n");
        std::vector<TermPtr> roots{parse_term(env, "a.stop"), parse_term(env, "b.stop")};
        Exploration sys = explore(env, roots);
        std::vector<ObservationSystem> battery;
        battery.push_back(observer("csp", "a.OMEGA"));
        auto v = testing_equiv(sys.graph, sys.roots[0], sys.roots[1], battery,
                               DeltaKind::conjunction, 6);
        REQUIRE(!v.equivalent);
        CHECK(v.witness->observer == "a.OMEGA");
        CHECK(v.witness->trace == tr({"a"}));
        CHECK(format_verdict(v) == "DISTINGUISHED observer=a.OMEGA trace=a lhs=true rhs=false");
    }
    SUBCASE("rates under product and under a clipping minimum") {
        auto env = parse_model("calculus pepa\ninit stop\n");
        std::vector<TermPtr> roots{parse_term(env, "(a,2).stop"), parse_term(env, "(a,3).stop")};
        Exploration sys = explore(env, roots);

        std::vector<ObservationSystem> battery;
        battery.push_back(observer("pepa", "(a,1).OMEGA"));
        auto v = testing_equiv(sys.graph, sys.roots[0], sys.roots[1], battery,
                               DeltaKind::product, 6);
        REQUIRE(!v.equivalent);
        CHECK(v.witness->lhs.value == 2);
        CHECK(v.witness->rhs.value == 3);

        // a slow observer caps both rates at 1, hiding the difference
        auto slow = testing_equiv(sys.graph, sys.roots[0], sys.roots[1], battery,
                                  DeltaKind::minimum, 6);
        CHECK(slow.equivalent);

        std::vector<ObservationSystem> fast;
        fast.push_back(observer("pepa", "(a,5).OMEGA"));
        auto v2 = testing_equiv(sys.graph, sys.roots[0], sys.roots[1], fast,
                                DeltaKind::minimum, 6);
        REQUIRE(!v2.equivalent);
        CHECK(v2.witness->lhs.value == 2);
        CHECK(v2.witness->rhs.value == 3);
    }
}

TEST_CASE("generated batteries") {
    SUBCASE("single action, depth 1") {
        auto battery = generate_battery({"a"}, 1, Calculus::csp);
        REQUIRE(battery.size() == 1);
        CHECK(battery[0].name == "a.OMEGA");
    }
    SUBCASE("two actions, depth 2") {
        auto battery = generate_battery({"a", "b"}, 2, Calculus::csp);
        std::vector<std::string> names;
        for (const auto& obs : battery) names.push_back(obs.name);
        CHECK(names == std::vector<std::string>{
                  "a.OMEGA", "b.OMEGA", "a.a.OMEGA", "a.b.OMEGA", "b.a.OMEGA", "b.b.OMEGA",
                  "a.(a.OMEGA + b.OMEGA)", "a.(b.OMEGA + a.OMEGA)", "b.(a.OMEGA + b.OMEGA)",
                  "b.(b.OMEGA + a.OMEGA)"});
        std::set<std::string> unique(names.begin(), names.end());
        CHECK(unique.size() == names.size());
    }
    SUBCASE("annotated calculi") {
        auto pepa = generate_battery({"a"}, 2, Calculus::pepa);
        CHECK(pepa[0].name == "(a,1).OMEGA");
        CHECK(pepa[1].name == "(a,1).(a,1).OMEGA");
        auto pcsp = generate_battery({"a", "b"}, 2, Calculus::pcsp);
        CHECK(pcsp[6].name == "a.(a.OMEGA +(1/2) b.OMEGA)");
    }
    SUBCASE("deterministic across calls") {
        auto b1 = generate_battery({"a", "b"}, 2, Calculus::pcsp);
        auto b2 = generate_battery({"a", "b"}, 2, Calculus::pcsp);
        REQUIRE(b1.size() == b2.size());
        for (std::size_t i = 0; i < b1.size(); ++i) {
            CHECK(b1[i].name == b2[i].name);
            CHECK(b1[i].graph.state_count() == b2[i].graph.state_count());
        }
    }
    SUBCASE("bounds") {
        CHECK_THROWS_AS(generate_battery({"a"}, 0, Calculus::csp), ContractViolation);
        CHECK_THROWS_AS(generate_battery({"a"}, 5, Calculus::csp), ContractViolation);
        CHECK(generate_battery({}, 3, Calculus::csp).empty());
    }
}

TEST_CASE("bisimilar states pass generated batteries on the corpus") {
    for (const std::string& name : oracle::corpus_names()) {
        CAPTURE(name);
        auto env = oracle::load_corpus(name);
        Exploration ex = explore(env);
        Partition p = bisim_refine(ex.graph);
        auto battery = generate_battery(ex.graph.alphabet(), 2, env.calculus());
        DeltaKind delta = default_delta(ex.graph.kind());
        for (StateId s1 = 0; s1 < ex.graph.state_count(); ++s1)
            for (StateId s2 = 0; s2 < ex.graph.state_count(); ++s2) {
                if (!p.same_block(s1, s2)) continue;
                CHECK(testing_equiv(ex.graph, s1, s2, battery, delta, 6).equivalent);
            }
    }
}

TEST_CASE("boolean testing against a full battery matches trace equivalence") {
    for (const std::string& name :
         {std::string("csp_vending.ultras"), std::string("csp_choice.ultras"),
          std::string("csp_par_sync.ultras"), std::string("csp_interleave.ultras")}) {
        CAPTURE(name);
        auto env = oracle::load_corpus(name);
        Exploration ex = explore(env);
        auto battery = generate_battery(ex.graph.alphabet(), 3, Calculus::csp);
        for (StateId s1 = 0; s1 < ex.graph.state_count(); ++s1)
            for (StateId s2 = 0; s2 < ex.graph.state_count(); ++s2) {
                bool traces = trace_equiv(ex.graph, s1, s2, 3).equivalent;
                bool tests =
                    testing_equiv(ex.graph, s1, s2, battery, DeltaKind::conjunction, 3).equivalent;
                CHECK(traces == tests);
            }
    }
}

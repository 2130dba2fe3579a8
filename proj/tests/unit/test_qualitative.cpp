#include <doctest.h>

#include <algorithm>

#include "enumeration.hpp"
#include "fixtures.hpp"
#include "monobn/gadget.hpp"
#include "monobn/oracle.hpp"
#include "monobn/qualitative.hpp"
#include "monobn/random_network.hpp"

using namespace monobn;
using monobn::testing::DraftBuilder;

namespace {

constexpr Sign P = Sign::Plus, M = Sign::Minus, Z = Sign::Zero, U = Sign::Unknown;

// X -> A -> C and X -> B -> C, with the sign of B -> C chosen by `b_to_c_up`.
Network diamond(bool b_to_c_up) {
  const double lo = b_to_c_up ? 0.2 : 0.8;
  const double hi = b_to_c_up ? 0.8 : 0.2;
  return DraftBuilder{}
      .var("X", {"x0", "x1"}, Role::Observable)
      .var("A", {"a0", "a1"}, Role::Intermediate)
      .var("B", {"b0", "b1"}, Role::Intermediate)
      .var("C", {"c0", "c1"}, Role::Output)
      .arc("X", "A")
      .arc("X", "B")
      .arc("A", "C")
      .arc("B", "C")
      .cpt("X", {{0.5, 0.5}})
      .cpt("A", {{0.7, 0.3}, {0.2, 0.8}})
      .cpt("B", {{0.7, 0.3}, {0.2, 0.8}})
      .cpt("C", {{1 - 0.5 * lo, 0.5 * lo},
                 {1 - 0.5 * hi, 0.5 * hi},
                 {1 - (0.5 * lo + 0.4), 0.5 * lo + 0.4},
                 {1 - (0.5 * hi + 0.4), 0.5 * hi + 0.4}})
      .build();
}

Network positive_chain() {
  return DraftBuilder{}
      .var("E", {"e0", "e1"}, Role::Observable)
      .var("A", {"a0", "a1"}, Role::Intermediate)
      .var("C", {"c0", "c1"}, Role::Output)
      .arc("E", "A")
      .arc("A", "C")
      .cpt("E", {{0.4, 0.6}})
      .cpt("A", {{0.8, 0.2}, {0.3, 0.7}})
      .cpt("C", {{0.9, 0.1}, {0.4, 0.6}})
      .build();
}

}  // namespace

TEST_CASE("sign tables match verbatim") {
  const Sign product[4][4] = {{P, M, Z, U}, {M, P, Z, U}, {Z, Z, Z, Z}, {U, U, Z, U}};
  const Sign sum[4][4] = {{P, U, P, U}, {U, M, M, U}, {P, M, Z, U}, {U, U, U, U}};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(sign_product(kAllSigns[i], kAllSigns[j]) == product[i][j]);
      CHECK(sign_sum(kAllSigns[i], kAllSigns[j]) == sum[i][j]);
    }
  CHECK(sign_product(P, M) == M);
  CHECK(sign_product(U, Z) == Z);
  CHECK(sign_sum(P, M) == U);
}

TEST_CASE("sign algebra laws") {
  for (Sign a : kAllSigns) {
    CHECK(sign_product(Z, a) == Z);
    CHECK(sign_product(P, a) == a);
    CHECK(sign_sum(Z, a) == a);
    CHECK(sign_sum(U, a) == U);
    for (Sign b : kAllSigns) {
      CHECK(sign_product(a, b) == sign_product(b, a));
      CHECK(sign_sum(a, b) == sign_sum(b, a));
    }
  }
  for (Sign s : kAllSigns) CHECK(parse_sign(to_string(s)) == s);
  const Sign mixed[] = {P, Z, M};
  CHECK(combine_observations(mixed) == U);
  CHECK(combine_observations(std::span<const Sign>{}) == Z);
}

TEST_CASE("arc signs on gadget rows") {
  const auto net = build_gadget({testing::evidence_chain(0.2, 0.6), "E", "e1", 0.3});
  CHECK(arc_sign(net, net.id_of(kGadgetB), net.id_of(kGadgetC)) == M);
  CHECK(arc_sign(net, net.id_of("E"), net.id_of(kGadgetA)) == P);
  CHECK(arc_sign(net, net.id_of(kGadgetA), net.id_of(kGadgetC)) == P);
  CHECK_THROWS_AS(arc_sign(net, net.id_of(kGadgetC), net.id_of("E")), std::invalid_argument);
}

TEST_CASE("identical rows give '0' and a flipping context gives '?'") {
  CHECK(arc_sign(testing::binary_chain(0.4, 0.4), 0, 1) == Z);
  CHECK(arc_sign(testing::binary_chain(0.4, 0.3), 0, 1) == M);
  const auto fig = testing::figure2_like();
  CHECK(arc_sign(fig, fig.id_of("X1"), fig.output()) == U);
  CHECK(arc_sign(fig, fig.id_of("Y"), fig.output()) == P);
  CHECK(arc_sign(fig, fig.id_of("X2"), fig.id_of("Y")) == P);
}

TEST_CASE("propagation along a positive chain") {
  const auto net = positive_chain();
  const auto r = propagate(net, net.id_of("E"));
  CHECK(r.signs[net.id_of("E")] == P);
  CHECK(r.signs[net.id_of("A")] == P);
  CHECK(r.signs[net.output()] == P);
}

TEST_CASE("parallel trails of opposite sign meet as '?'") {
  const auto same = diamond(true);
  CHECK(propagate(same, 0).signs[same.output()] == P);
  const auto opposite = diamond(false);
  CHECK(arc_sign(opposite, opposite.id_of("B"), opposite.output()) == M);
  CHECK(propagate(opposite, 0).signs[opposite.output()] == U);
}

TEST_CASE("an unobserved collider blocks the trail") {
  const auto net = DraftBuilder{}
                       .var("X", {"x0", "x1"}, Role::Observable)
                       .var("Z", {"z0", "z1"}, Role::Intermediate)
                       .var("C", {"c0", "c1"}, Role::Output)
                       .var("W", {"w0", "w1"}, Role::Intermediate)
                       .arc("X", "W")
                       .arc("Z", "W")
                       .arc("Z", "C")
                       .cpt("X", {{0.5, 0.5}})
                       .cpt("Z", {{0.5, 0.5}})
                       .cpt("W", {{0.9, 0.1}, {0.6, 0.4}, {0.5, 0.5}, {0.2, 0.8}})
                       .cpt("C", {{0.7, 0.3}, {0.3, 0.7}})
                       .build();
  const auto r = propagate(net, net.id_of("X"));
  CHECK(r.signs[net.id_of("W")] == P);
  CHECK(r.signs[net.id_of("Z")] == Z);
  CHECK(r.signs[net.output()] == Z);
}

TEST_CASE("propagation stays within 2|V| node updates") {
  for (std::size_t i = 0; i < 200; ++i) {
    const auto net = testing::corpus_network(i);
    for (VarId x : net.observables()) CHECK(propagate(net, x).node_updates <= 2 * net.size());
  }
}

TEST_CASE("approx_verdict aggregation") {
  const auto chain = positive_chain();
  CHECK(approx_verdict(chain).verdict.kind == VerdictKind::IsotoneInDistribution);

  const auto mixed = DraftBuilder{}
                         .var("X", {"x0", "x1"}, Role::Observable)
                         .var("Y", {"y0", "y1"}, Role::Observable)
                         .var("C", {"c0", "c1"}, Role::Output)
                         .arc("X", "C")
                         .arc("Y", "C")
                         .cpt("X", {{0.5, 0.5}})
                         .cpt("Y", {{0.5, 0.5}})
                         .cpt("C", {{0.5, 0.5}, {0.7, 0.3}, {0.2, 0.8}, {0.4, 0.6}})
                         .build();
  const auto v = approx_verdict(mixed).verdict;
  CHECK(v.kind == VerdictKind::Mixed);
  CHECK(v.isotone == std::vector<VarId>{0});
  CHECK(v.antitone == std::vector<VarId>{1});

  const std::pair<VarId, Sign> zeros[] = {{0, Z}, {1, Z}};
  CHECK(aggregate_verdict(zeros).kind == VerdictKind::Both);
  const std::pair<VarId, Sign> plus_zero[] = {{0, P}, {1, Z}};
  CHECK(aggregate_verdict(plus_zero).kind == VerdictKind::IsotoneInDistribution);
  const std::pair<VarId, Sign> minus_zero[] = {{0, M}, {1, Z}};
  CHECK(aggregate_verdict(minus_zero).kind == VerdictKind::AntitoneInDistribution);
  const std::pair<VarId, Sign> unknown[] = {{0, P}, {1, U}};
  const auto inc = aggregate_verdict(unknown);
  CHECK(inc.kind == VerdictKind::Inconclusive);
  CHECK(inc.inconclusive == std::vector<VarId>{1});
}

TEST_CASE("figure2-like fixture: inconclusive without refinement, '+' with it") {
  for (bool x2_observable : {false, true}) {
    CAPTURE(x2_observable);
    const auto net = testing::figure2_like(x2_observable);
    const VarId x1 = net.id_of("X1");
    CHECK(approx_verdict(net, 0).verdict.kind == VerdictKind::Inconclusive);
    CHECK(decide_mid(net, Direction::Isotone).holds);
    CHECK(refine_sign(net, x1, 0) == U);
    const auto r = refine(net, x1, 16);
    CHECK(r.sign == P);
    CHECK_FALSE(r.widened);
    const auto report = approx_verdict(net, 16);
    const auto it = std::find_if(report.observables.begin(), report.observables.end(),
                                 [&](const ObservableSign& o) { return o.variable == x1; });
    REQUIRE(it != report.observables.end());
    CHECK(it->propagated == U);
    CHECK(it->final_sign == P);
  }
}

TEST_CASE("grid search reconstructs a figure2-like fixture") {
  const auto found = testing::search_figure2(true, 16);
  REQUIRE(found);
  const auto net = testing::figure2_network(*found, true);
  CHECK(testing::reference_mid(net, true));
}

TEST_CASE("refinement stays '?' when the bound box straddles a sign flip") {
  testing::Figure2Params p;
  p.y_given_x2bar = 0.05;
  p.y_given_x2 = 0.95;
  const auto net = testing::figure2_network(p, true);
  CHECK(refine_sign(net, net.id_of("X1"), 64) == U);
}

TEST_CASE("refinement without enough budget widens and stays sound") {
  const auto net = testing::figure2_like(true);
  const auto r = refine(net, net.id_of("X1"), 1);
  if (r.sign != U) CHECK(testing::reference_mid(net, r.sign == P, net.id_of("X1")));
}

TEST_CASE("refinement is monotone in budget and sound per variable") {
  std::size_t resolved = 0;
  for (std::size_t i = 0; i < 150; ++i) {
    const auto net = testing::corpus_network(i);
    for (VarId x : net.observables()) {
      if (propagate(net, x).signs[net.output()] != U) continue;
      Sign settled = U;
      for (std::size_t budget : {1u, 2u, 4u, 8u, 16u, 64u}) {
        const Sign s = refine_sign(net, x, budget);
        if (settled != U) CHECK(s == settled);
        if (s != U) settled = s;
      }
      if (settled == P || settled == M) {
        ++resolved;
        CHECK(testing::reference_mid(net, settled == P, x));
      }
      if (settled == Z) {
        CHECK(testing::reference_mid(net, true, x));
        CHECK(testing::reference_mid(net, false, x));
      }
    }
  }
  MESSAGE("refinement resolved " << resolved << " inconclusive signs");
}

TEST_CASE("definite propagated signs are sound per variable") {
  for (std::size_t i = 0; i < 150; ++i) {
    const auto net = testing::corpus_network(i);
    CAPTURE(i);
    for (const auto& o : approx_verdict(net, 8).observables) {
      if (o.final_sign == P || o.final_sign == Z)
        CHECK(testing::reference_mid(net, true, o.variable));
      if (o.final_sign == M || o.final_sign == Z)
        CHECK(testing::reference_mid(net, false, o.variable));
    }
  }
}

TEST_CASE("likelihood-ratio sign of a ternary child") {
  // Rows dominate in order but the ratio of the last two values dips.
  const auto net = DraftBuilder{}
                       .var("P", {"p0", "p1"}, Role::Observable)
                       .var("Q", {"q0", "q1", "q2"}, Role::Output)
                       .arc("P", "Q")
                       .cpt("P", {{0.5, 0.5}})
                       .cpt("Q", {{0.5, 0.1, 0.4}, {0.2, 0.4, 0.4}})
                       .build();
  CHECK(arc_sign(net, 0, 1) == P);
  CHECK(likelihood_ratio_sign(net, 0, 1, P) == U);

  const auto tp2 = DraftBuilder{}
                       .var("P", {"p0", "p1"}, Role::Observable)
                       .var("Q", {"q0", "q1", "q2"}, Role::Output)
                       .arc("P", "Q")
                       .cpt("P", {{0.5, 0.5}})
                       .cpt("Q", {{0.5, 0.3, 0.2}, {0.2, 0.3, 0.5}})
                       .build();
  CHECK(likelihood_ratio_sign(tp2, 0, 1, arc_sign(tp2, 0, 1)) == P);
}

TEST_CASE("evidence below a ternary output needs the likelihood-ratio order") {
  // X -> C -> E with E observed. Pr(C | x) dominates, but E reweights C and
  // the dominance can flip.
  const auto net = DraftBuilder{}
                       .var("X", {"x0", "x1"}, Role::Observable)
                       .var("C", {"c0", "c1", "c2"}, Role::Output)
                       .var("E", {"e0", "e1", "e2"}, Role::Observable)
                       .arc("X", "C")
                       .arc("C", "E")
                       .cpt("X", {{0.6, 0.4}})
                       .cpt("C", {{0.341, 0.317, 0.342}, {0.297, 0.147, 0.556}})
                       .cpt("E", {{0.195, 0.497, 0.308}, {0.213, 0.727, 0.060}, {0.325, 0.072, 0.603}})
                       .build();
  CHECK(arc_sign(net, 0, 1) == P);
  CHECK_FALSE(testing::reference_mid(net, true, 0));
  CHECK(propagate(net, 0).signs[1] == U);
}

TEST_CASE("definite signs are sound on networks with ternary variables") {
  std::size_t definite = 0;
  for (std::uint64_t seed = 0; seed < 600; ++seed) {
    RandomNetworkParams params;
    params.nodes = 3 + seed % 5;
    params.max_parents = 1 + seed % 3;
    params.max_values = 3;
    params.style = static_cast<CptStyle>(seed % 3);
    params.polytree = seed % 4 == 0;
    const auto net = random_network(params, 0xabc0 + seed);
    CAPTURE(seed);
    for (const auto& o : approx_verdict(net, 4).observables) {
      if (o.final_sign != U) ++definite;
      if (o.final_sign == P || o.final_sign == Z)
        CHECK(testing::reference_mid(net, true, o.variable));
      if (o.final_sign == M || o.final_sign == Z)
        CHECK(testing::reference_mid(net, false, o.variable));
    }
  }
  MESSAGE(definite << " definite signs");
}

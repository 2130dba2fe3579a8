#include "fixtures.hpp"

#include "monobn/oracle.hpp"
#include "monobn/qualitative.hpp"

namespace monobn::testing {

DraftBuilder& DraftBuilder::var(const std::string& name, std::vector<std::string> values,
                                Role role) {
  draft_.variables.push_back({name, std::move(values)});
  draft_.roles.push_back({name, role});
  return *this;
}

DraftBuilder& DraftBuilder::arc(const std::string& parent, const std::string& child) {
  draft_.arcs.push_back({parent, child});
  return *this;
}

DraftBuilder& DraftBuilder::cpt(const std::string& name, std::vector<std::vector<double>> rows) {
  draft_.cpts.push_back({name, std::move(rows)});
  return *this;
}

Network binary_chain(double c_given_xbar, double c_given_x) {
  return DraftBuilder{}
      .var("X", {"x0", "x1"}, Role::Observable)
      .var("C", {"c0", "c1"}, Role::Output)
      .arc("X", "C")
      .cpt("X", {{0.5, 0.5}})
      .cpt("C", {{1 - c_given_xbar, c_given_xbar}, {1 - c_given_x, c_given_x}})
      .build();
}

Network single_observable(const std::vector<double>& lower, const std::vector<double>& upper) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < lower.size(); ++i) labels.push_back("c" + std::to_string(i + 1));
  return DraftBuilder{}
      .var("X", {"x0", "x1"}, Role::Observable)
      .var("C", labels, Role::Output)
      .arc("X", "C")
      .cpt("X", {{0.5, 0.5}})
      .cpt("C", {lower, upper})
      .build();
}

Network evidence_chain(double e_given_xbar, double e_given_x) {
  return DraftBuilder{}
      .var("X", {"x0", "x1"}, Role::Observable)
      .var("E", {"e0", "e1"}, Role::Output)
      .arc("X", "E")
      .cpt("X", {{0.5, 0.5}})
      .cpt("E", {{1 - e_given_xbar, e_given_xbar}, {1 - e_given_x, e_given_x}})
      .build();
}

Network figure2_network(const Figure2Params& p, bool x2_observable) {
  std::vector<std::vector<double>> c_rows;
  for (double c : p.c) c_rows.push_back({1 - c, c});
  return DraftBuilder{}
      .var("X1", {"x1_no", "x1_yes"}, Role::Observable)
      .var("X2", {"x2_no", "x2_yes"}, x2_observable ? Role::Observable : Role::Intermediate)
      .var("Y", {"y_no", "y_yes"}, Role::Intermediate)
      .var("C", {"c_no", "c_yes"}, Role::Output)
      .arc("X2", "Y")
      .arc("X1", "C")
      .arc("Y", "C")
      .cpt("X1", {{0.5, 0.5}})
      .cpt("X2", {{1 - p.x2, p.x2}})
      .cpt("Y", {{1 - p.y_given_x2bar, p.y_given_x2bar}, {1 - p.y_given_x2, p.y_given_x2}})
      .cpt("C", c_rows)
      .build();
}

Network figure2_like(bool x2_observable) { return figure2_network({}, x2_observable); }

std::optional<Figure2Params> search_figure2(bool x2_observable, std::size_t budget) {
  Figure2Params p;
  // Rows of C in canonical order: (x1-bar, y-bar), (x1-bar, y), (x1, y-bar), (x1, y).
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; b <= 9; ++b)
      for (int c = 1; c <= 9; ++c)
        for (int d = 1; d <= 9; ++d) {
          // The X1 effect must flip sign with Y, which makes the arc '?'.
          if (!((c > a && d < b) || (c < a && d > b))) continue;
          p.c[0] = a / 10.0;
          p.c[1] = b / 10.0;
          p.c[2] = c / 10.0;
          p.c[3] = d / 10.0;
          const Network net = figure2_network(p, x2_observable);
          const VarId x1 = net.id_of("X1");
          if (arc_sign(net, x1, net.output()) != Sign::Unknown) continue;
          if (approx_verdict(net, 0).verdict.kind != VerdictKind::Inconclusive) continue;
          if (!decide_mid(net, Direction::Isotone).holds) continue;
          if (refine_sign(net, x1, budget) != Sign::Plus) continue;
          return p;
        }
  return std::nullopt;
}

RandomNetworkParams corpus_params(std::size_t i) {
  RandomNetworkParams p;
  p.nodes = 3 + i % 8;  // 3..10
  p.max_parents = 1 + (i / 8) % 3;
  p.min_values = p.max_values = 2;
  p.polytree = (i % 5) == 0;
  p.observables = 1 + (i / 3) % std::min<std::size_t>(4, p.nodes - 1);
  switch (i % 3) {
    case 0: p.style = CptStyle::Monotone; break;
    case 1: p.style = CptStyle::Positive; break;
    default: p.style = CptStyle::Arbitrary; break;
  }
  if (p.style == CptStyle::Arbitrary && (i % 7) == 2) p.zero_entry_rate = 0.15;
  return p;
}

std::uint64_t corpus_seed(std::size_t i) { return 0x5eed0000ULL + 7919ULL * i; }

Network corpus_network(std::size_t i) { return random_network(corpus_params(i), corpus_seed(i)); }

std::string data_dir() {
#ifdef MONOBN_DATA_DIR
  return MONOBN_DATA_DIR;
#else
  return "data";
#endif
}

}  // namespace monobn::testing

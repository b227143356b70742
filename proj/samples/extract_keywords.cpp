// Ranks the words of a short text with three centrality measures and prints
// the top 25% of each.

#include <iostream>

#include "keygraph/keygraph.hpp"

int main() {
  using namespace keygraph;
  const char* text =
      "White House officials said the decision on military aid to Egypt was under review. "
      "Senior officials met with Egypt's defense minister. The White House said aid policy "
      "toward Egypt would follow the review, and officials expected a decision soon.";

  auto doc = preprocess_words(text);
  auto net = build_word_network(doc, /*directed=*/true, /*simplified=*/false);

  for (const auto& variant : {Variant{Measure::kDegree, Mode::kAll},
                              Variant{Measure::kStrength, Mode::kAll},
                              Variant{Measure::kPageRank, Mode::kAll, false,
                                      Interpretation::kDirected}}) {
    auto ranked = threshold(rank_terms(compute(net, variant), net), 25);
    std::cout << variant.id() << ":";
    for (const auto& t : ranked.terms) std::cout << ' ' << t.term;
    std::cout << '\n';
  }
}

// Builds the (G_b, G_e) pair for s=2, t=3, then connects the two graphs with
// a single swap and shows that small butterfly-preserving moves cannot.

#include <iostream>

#include "bfly/bfly.hpp"

int main() {
  using namespace bfly;
  auto cp = construct_pair(2, 3);
  std::cout << "G_b: " << cp.g_begin.edge_count() << " edges, " << butterfly_count(cp.g_begin)
            << " butterflies\n";
  std::cout << "G_e: " << cp.g_end.edge_count() << " edges, " << butterfly_count(cp.g_end)
            << " butterflies\n";

  auto sw = direct_qbso(cp.g_begin, cp.g_end);
  auto out = apply_qbso(cp.g_begin, sw);
  std::cout << "direct swap of size " << sw.q() << " reaches G_e: "
            << (out.graph_after == cp.g_end ? "yes" : "no") << "\n";

  exploration_options opts;
  opts.q_max = 3;
  opts.preserve_butterflies = true;
  opts.iso_mode = true;
  opts.target = cp.g_end;
  auto rep = reachable_set(cp.g_begin, opts);
  std::cout << "swaps of size <= 3 keeping 10 butterflies: " << rep.visited_count
            << " isomorphism classes reachable, G_e " << (rep.target_found ? "found" : "not found")
            << "\n";
}

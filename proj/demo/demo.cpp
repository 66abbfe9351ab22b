#include <iostream>

#include "fcs/fcs.hpp"

int main() {
  fcs::Graph g = fcs::gen::dumbbell(5);
  std::cout << "dumbbell: " << g.node_count() << " nodes, " << g.edge_count() << " edges\n";

  fcs::GHTree tree = fcs::gomory_hu(g);
  fcs::GHQuery q = fcs::gh_query(tree, 1, 6);
  std::cout << "min cut 1-6: " << q.value << ", side of 1 has " << q.cut.side.size() << " nodes\n";

  fcs::Sparsifier h = fcs::friendly_mincut_sparsifier_from_gh(g, tree);
  std::cout << "friendly min-cut sparsifier: " << h.graph.node_count() << " super-nodes, "
            << h.graph.total_weight() << " edges\n";

  fcs::Graph p = fcs::gen::path(10);
  fcs::Sparsifier s = fcs::friendly_sparsify_oneshot(p, 2);
  fcs::PreservationReport r = fcs::verify_friendly_preservation(p, s, 2);
  std::cout << "path-10 oneshot w=2: " << s.graph.node_count() << " super-nodes, " << r.checked
            << " friendly cuts checked, " << (r.passed ? "preserved" : "violated") << '\n';

  fcs::EstimateTable t = fcs::accelerated_single_source(g, 0);
  std::cout << "single-source from 0:";
  for (fcs::NodeId v = 1; v < g.node_count(); ++v) std::cout << ' ' << t.value[v];
  std::cout << '\n';
}

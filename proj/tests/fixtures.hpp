#pragma once

#include "eon/netgraph.hpp"

namespace eon::testing {

// Three vertices s=0, i=1, t=2 over units 0..3.
//   e1 (id 0): s-i, length 1, units [1,2]
//   e2 (id 1): s-i, length 2, units [1,3]
//   e3 (id 2): i-t, length 10, units [2,3]
inline Multigraph revisit_graph() {
  Multigraph g(3, 4);
  g.set_available(g.add_edge(0, 1, 1), UnitSet{{1, 2}});
  g.set_available(g.add_edge(0, 1, 2), UnitSet{{1, 3}});
  g.set_available(g.add_edge(1, 2, 10), UnitSet{{2, 3}});
  return g;
}

// s=0, i=1, t=2 over units 0..3.
//   e1 (id 0): s-i, length 1, units [1,2]
//   e2 (id 1): s-i, length 2, units [2,3]
//   e3 (id 2): s-i, length 1, units [1,3]
//   e4 (id 3): i-t, length 1, units [1,3]
inline Multigraph discard_graph() {
  Multigraph g(3, 4);
  g.set_available(g.add_edge(0, 1, 1), UnitSet{{1, 2}});
  g.set_available(g.add_edge(0, 1, 2), UnitSet{{2, 3}});
  g.set_available(g.add_edge(0, 1, 1), UnitSet{{1, 3}});
  g.set_available(g.add_edge(1, 2, 1), UnitSet{{1, 3}});
  return g;
}

}  // namespace eon::testing

#pragma once

#include <vector>

#include "causalnli/dag.hpp"

namespace causalnli {

/// Largest node count accepted by enumerate_dags. Runtime grows as
/// 2^(n(n-1)/2) masks times the canonicalization cost; 6 takes well under
/// a second, 7 about ten seconds, 8 is impractical.
constexpr int kMaxEnumerationNodes = 8;

/// One representative per isomorphism class of DAGs on n unlabeled nodes.
///
/// Scans every upper-triangular edge mask (any DAG can be relabeled into
/// one), dedupes by canonical key, keeps the smallest mask per class, and
/// returns the representatives ordered by ascending canonical key. All
/// representatives carry default node names.
std::vector<Dag> enumerate_dags(int node_count);

}  // namespace causalnli

#pragma once

#include <string>

#include "cdtree/dag.hpp"
#include "cdtree/dataset.hpp"

namespace cdtree {

// CSV with an optional header row of column names; every data row must have
// the same number of finite decimal fields. Parse errors carry row/column
// positions.
ObservationDataset load_dataset(const std::string& path);
void save_dataset(const ObservationDataset& data, const std::string& path);

// Ground-truth DAG as either an edge-list CSV (rows "i,j") or a d x d 0/1
// adjacency matrix. Must be acyclic with in-range node ids; an empty file is
// the empty DAG.
Dag load_truth(const std::string& path, int d);
void save_truth_edge_list(const Dag& dag, const std::string& path);

}  // namespace cdtree

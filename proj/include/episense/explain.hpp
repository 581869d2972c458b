#ifndef EPISENSE_EXPLAIN_HPP
#define EPISENSE_EXPLAIN_HPP

#include "episense/concepts.hpp"
#include "episense/regress.hpp"

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace episense::explain {

/// Directed graph of pandemic sub-events; an edge (u, v) means "u triggers v".
/// Cycles are allowed, self-loops are not.
struct CausalGraph {
    std::set<std::string> nodes;
    std::vector<std::pair<std::string, std::string>> edges;
    std::map<std::pair<std::string, std::string>, std::string> labels;
    std::map<std::string, std::vector<std::string>> reverse_adj; // consequence -> triggers
};

struct Trigger {
    std::string node;
    int depth = 0;
};

struct Explanation {
    std::string concept_name;
    double influence_score = 0.0;
    std::vector<Trigger> triggers;
    std::vector<std::vector<std::string>> paths_sampled; // trigger -> ... -> concept
};

/// JSON: {"nodes": ["a", ...], "edges": [["a","b"], ...],
///        "labels": {"a->b": "..."} (optional)}
CausalGraph load_graph(std::string_view json_text);

/// Ancestors of concept_name within max_depth over reversed edges,
/// breadth-first with a visited set; ordered (depth asc, name asc).
std::vector<Trigger> triggers_of(const CausalGraph& g,
                                 const std::string& concept_name,
                                 int max_depth);

/// Ranks concepts by frequency share x |sentiment coefficient| x mean
/// absolute match score, and attaches each one's trigger ancestry.
std::vector<Explanation> explain_top_concepts(
    const concepts::ConceptCloud& cloud,
    const std::vector<concepts::ConceptMatch>& matches,
    const std::map<std::string, double>& scores, const regress::FitResult& fit,
    const CausalGraph& g, int k, int max_depth);

std::string explanations_to_json(const std::vector<Explanation>& explanations);

/// Graph-description text (DOT) of the union of trigger subgraphs.
std::string trigger_subgraph_dot(const CausalGraph& g,
                                 const std::vector<Explanation>& explanations);

} // namespace episense::explain

#endif

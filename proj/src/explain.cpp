#include "episense/explain.hpp"
#include "episense/errors.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <sstream>

namespace episense::explain {

CausalGraph load_graph(std::string_view json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("nodes") ||
        !j.contains("edges"))
        throw DataError("MalformedGraph: expected {nodes, edges}");

    CausalGraph g;
    for (const auto& n : j["nodes"]) {
        if (!n.is_string()) throw DataError("MalformedGraph: non-string node");
        g.nodes.insert(n.get<std::string>());
    }
    std::set<std::pair<std::string, std::string>> seen;
    for (const auto& e : j["edges"]) {
        if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string())
            throw DataError("MalformedGraph: bad edge entry");
        auto from = e[0].get<std::string>();
        auto to = e[1].get<std::string>();
        if (!g.nodes.count(from) || !g.nodes.count(to))
            throw DataError("UnknownEndpoint: " + from + " -> " + to);
        if (from == to) throw DataError("SelfLoop: " + from);
        if (!seen.insert({from, to}).second)
            throw DataError("DuplicateEdge: " + from + " -> " + to);
        g.reverse_adj[to].push_back(from);
        g.edges.emplace_back(std::move(from), std::move(to));
    }
    if (j.contains("labels")) {
        for (const auto& [key, val] : j["labels"].items()) {
            std::size_t arrow = key.find("->");
            if (arrow == std::string::npos || !val.is_string())
                throw DataError("MalformedGraph: bad label key " + key);
            g.labels[{key.substr(0, arrow), key.substr(arrow + 2)}] =
                val.get<std::string>();
        }
    }
    for (auto& [node, preds] : g.reverse_adj)
        std::sort(preds.begin(), preds.end());
    return g;
}

std::vector<Trigger> triggers_of(const CausalGraph& g,
                                 const std::string& concept_name,
                                 int max_depth) {
    if (!g.nodes.count(concept_name))
        throw DataError("UnknownConcept: " + concept_name);
    if (max_depth < 1) throw ConfigError("InvalidDepth");

    std::vector<Trigger> out;
    std::set<std::string> visited{concept_name};
    std::deque<std::pair<std::string, int>> queue{{concept_name, 0}};
    while (!queue.empty()) {
        auto [node, depth] = queue.front();
        queue.pop_front();
        if (depth == max_depth) continue;
        auto it = g.reverse_adj.find(node);
        if (it == g.reverse_adj.end()) continue;
        for (const auto& pred : it->second) {
            if (!visited.insert(pred).second) continue;
            out.push_back({pred, depth + 1});
            queue.push_back({pred, depth + 1});
        }
    }
    std::sort(out.begin(), out.end(), [](const Trigger& a, const Trigger& b) {
        if (a.depth != b.depth) return a.depth < b.depth;
        return a.node < b.node;
    });
    return out;
}

std::vector<Explanation> explain_top_concepts(
    const concepts::ConceptCloud& cloud,
    const std::vector<concepts::ConceptMatch>& matches,
    const std::map<std::string, double>& scores, const regress::FitResult& fit,
    const CausalGraph& g, int k, int max_depth) {
    if (k < 1) throw ConfigError("InvalidK");
    auto beta_it = fit.coefficients.find("sentiment");
    if (beta_it == fit.coefficients.end())
        throw DataError("NoSentimentCoefficient");
    double beta_abs = std::abs(beta_it->second);

    std::int64_t total = 0;
    for (const auto& [name, count] : cloud.counts) total += count;
    if (total == 0) throw DataError("EmptyCloud");

    // mean |score| per concept over the cloud's period
    std::map<std::string, std::pair<double, std::int64_t>> acc;
    for (const auto& m : matches) {
        if (m.local_date < cloud.from || m.local_date > cloud.to) continue;
        auto it = scores.find(m.tweet_id);
        if (it == scores.end()) throw DataError("MissingScore: " + m.tweet_id);
        auto& [sum, n] = acc[m.concept_name];
        sum += std::abs(it->second);
        ++n;
    }

    std::vector<Explanation> ranked;
    for (const auto& [name, count] : cloud.counts) {
        if (count == 0) continue;
        Explanation e;
        e.concept_name = name;
        double mean_abs = 0.0;
        if (auto it = acc.find(name); it != acc.end() && it->second.second > 0)
            mean_abs = it->second.first / it->second.second;
        e.influence_score =
            (static_cast<double>(count) / total) * beta_abs * mean_abs;
        ranked.push_back(std::move(e));
    }
    std::sort(ranked.begin(), ranked.end(), [](const Explanation& a, const Explanation& b) {
        if (a.influence_score != b.influence_score)
            return a.influence_score > b.influence_score;
        return a.concept_name < b.concept_name;
    });
    if (static_cast<int>(ranked.size()) > k) ranked.resize(k);

    for (auto& e : ranked) {
        if (!g.nodes.count(e.concept_name)) continue; // concept outside the graph
        e.triggers = triggers_of(g, e.concept_name, max_depth);
        // one shortest trigger path per direct ancestor chain, via BFS parents
        std::map<std::string, std::string> parent;
        std::deque<std::string> queue{e.concept_name};
        std::set<std::string> visited{e.concept_name};
        std::map<std::string, int> depth{{e.concept_name, 0}};
        while (!queue.empty()) {
            auto node = queue.front();
            queue.pop_front();
            if (depth[node] == max_depth) continue;
            auto it = g.reverse_adj.find(node);
            if (it == g.reverse_adj.end()) continue;
            for (const auto& pred : it->second) {
                if (!visited.insert(pred).second) continue;
                parent[pred] = node;
                depth[pred] = depth[node] + 1;
                queue.push_back(pred);
            }
        }
        for (const auto& trig : e.triggers) {
            std::vector<std::string> path;
            std::string cur = trig.node;
            while (true) {
                path.push_back(cur);
                auto it = parent.find(cur);
                if (it == parent.end()) break;
                cur = it->second;
            }
            e.paths_sampled.push_back(std::move(path));
        }
    }
    return ranked;
}

std::string explanations_to_json(const std::vector<Explanation>& explanations) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& e : explanations) {
        nlohmann::json je;
        je["concept"] = e.concept_name;
        je["influence_score"] = e.influence_score;
        je["triggers"] = nlohmann::json::array();
        for (const auto& t : e.triggers)
            je["triggers"].push_back({{"node", t.node}, {"depth", t.depth}});
        je["paths_sampled"] = e.paths_sampled;
        j.push_back(std::move(je));
    }
    return j.dump(2) + "\n";
}

std::string trigger_subgraph_dot(const CausalGraph& g,
                                 const std::vector<Explanation>& explanations) {
    std::set<std::string> keep;
    for (const auto& e : explanations) {
        keep.insert(e.concept_name);
        for (const auto& t : e.triggers) keep.insert(t.node);
    }
    std::ostringstream os;
    os << "digraph triggers {\n";
    for (const auto& n : keep) os << "  \"" << n << "\";\n";
    for (const auto& [from, to] : g.edges) {
        if (keep.count(from) && keep.count(to))
            os << "  \"" << from << "\" -> \"" << to << "\";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace episense::explain

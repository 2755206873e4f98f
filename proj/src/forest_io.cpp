#include "lions/forest_io.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace lions {

using nlohmann::ordered_json;

std::string forest_to_json(const LionsForest& t)
{
    auto id = [&](int x) { return t.ids.empty() ? x + 1 : t.ids[static_cast<std::size_t>(x)]; };
    ordered_json j;
    j["format"] = "lions-forest/1";
    j["nodes"] = ordered_json::array();
    j["edges"] = ordered_json::array();
    j["labels"] = ordered_json::array();
    for (std::size_t x = 0; x < t.size(); ++x) {
        j["nodes"].push_back(id(static_cast<int>(x)));
        j["labels"].push_back(t.labels[x]);
        if (t.parent[x] >= 0)
            j["edges"].push_back({id(static_cast<int>(x)), id(t.parent[x])});
    }
    j["tags"] = ordered_json::object();
    for (const auto& [tag, b] : t.hyper.tags()) {
        auto& arr = j["tags"][tag] = ordered_json::array();
        for (int x : b)
            arr.push_back(id(x));
    }
    j["blocks"] = ordered_json::array();
    for (const auto& b : t.hyper.blocks().blocks()) {
        ordered_json arr = ordered_json::array();
        for (int x : b)
            arr.push_back(id(x));
        j["blocks"].push_back(arr);
    }
    return j.dump(2) + "\n";
}

LionsForest forest_from_json(const std::string& text)
{
    ordered_json j;
    try {
        j = ordered_json::parse(text);
    } catch (const ordered_json::parse_error& e) {
        throw ForestError(ForestError::Kind::Malformed, std::string("bad JSON: ") + e.what());
    }
    try {
        std::vector<int> nodes = j.at("nodes").get<std::vector<int>>();
        std::vector<int> labels = j.at("labels").get<std::vector<int>>();
        if (labels.size() != nodes.size())
            throw ForestError(ForestError::Kind::Malformed, "labels must list one label per node");
        std::map<int, int> lab;
        for (std::size_t i = 0; i < nodes.size(); ++i)
            lab[nodes[i]] = labels[i];
        std::vector<std::pair<int, int>> edges;
        for (const auto& e : j.at("edges")) {
            auto v = e.get<std::vector<int>>();
            if (v.size() != 2)
                throw ForestError(ForestError::Kind::Malformed, "edges are [child, parent] pairs");
            edges.emplace_back(v[0], v[1]);
        }
        std::map<TagId, Block> tags;
        if (j.contains("tags"))
            for (const auto& [k, v] : j.at("tags").items())
                tags[k] = v.get<std::vector<int>>();
        if (tags.empty())
            tags["0"];
        std::vector<Block> blocks;
        if (j.contains("blocks"))
            for (const auto& b : j.at("blocks"))
                blocks.push_back(b.get<std::vector<int>>());
        return forest_validate(nodes, edges, lab, TaggedPartition(std::move(tags), Partition(std::move(blocks))));
    } catch (const ordered_json::exception& e) {
        throw ForestError(ForestError::Kind::Malformed, std::string("bad forest document: ") + e.what());
    }
}

LionsForest load_forest(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw ForestError(ForestError::Kind::Malformed, "cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return forest_from_json(ss.str());
}

std::string forest_to_dot(const LionsForest& t)
{
    static const char* palette[] = {"lightblue", "palegreen", "khaki", "lightpink", "plum", "lightsalmon", "lightgray", "aquamarine"};
    auto id = [&](int x) { return t.ids.empty() ? x + 1 : t.ids[static_cast<std::size_t>(x)]; };
    std::ostringstream os;
    os << "digraph lions {\n  rankdir=BT;\n  node [style=filled];\n";
    int cluster = 0;
    for (const auto& [tag, b] : t.hyper.tags()) {
        if (b.empty())
            continue;
        os << "  subgraph cluster_" << cluster++ << " {\n    label=\"#" << tag << "\"; style=bold; penwidth=3;\n";
        for (int x : b)
            os << "    n" << id(x) << " [label=\"" << id(x) << ":" << t.labels[static_cast<std::size_t>(x)] << "\", fillcolor=gold, peripheries=2];\n";
        os << "  }\n";
    }
    std::size_t colour = 0;
    for (const auto& b : t.hyper.blocks().blocks()) {
        os << "  subgraph cluster_" << cluster++ << " {\n    label=\"\"; style=dashed;\n";
        for (int x : b)
            os << "    n" << id(x) << " [label=\"" << id(x) << ":" << t.labels[static_cast<std::size_t>(x)] << "\", fillcolor=" << palette[colour % 8] << "];\n";
        os << "  }\n";
        ++colour;
    }
    for (std::size_t x = 0; x < t.size(); ++x)
        if (t.parent[x] >= 0)
            os << "  n" << id(static_cast<int>(x)) << " -> n" << id(t.parent[x]) << " [style=solid];\n";
    os << "}\n";
    return os.str();
}

} // namespace lions

#include "netwalk/edge_list.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "netwalk/errors.hpp"

namespace netwalk {

namespace {

bool parse_u32(std::string_view token, std::uint32_t& out) {
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
    return ec == std::errc{} && ptr == token.data() + token.size();
}

} // namespace

LoadedEdgeList load_edge_list(const std::string& text) {
    std::vector<Edge> edges;
    std::unordered_set<std::uint64_t> seen;
    std::size_t dropped = 0;
    NodeId max_node = 0;
    bool any_node = false;
    NodeId pinned_nodes = 0;
    bool has_pin = false;

    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const std::size_t eol = text.find('\n', pos);
        std::string_view line(text.data() + pos,
                              (eol == std::string::npos ? text.size() : eol) - pos);
        pos = (eol == std::string::npos) ? text.size() + 1 : eol + 1;
        ++line_no;

        // trim
        while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t'))
            line.remove_suffix(1);
        while (!line.empty() && (line.front() == ' ' || line.front() == '\t'))
            line.remove_prefix(1);
        if (line.empty()) continue;
        if (line.front() == '#') {
            std::istringstream hs{std::string(line.substr(1))};
            std::string word;
            std::uint64_t value = 0;
            if (hs >> word >> value && word == "nodes") {
                pinned_nodes = static_cast<NodeId>(value);
                has_pin = true;
            }
            continue;
        }

        std::istringstream ls{std::string(line)};
        std::string a, b, extra;
        if (!(ls >> a >> b) || (ls >> extra))
            throw ParseError("expected two integers, got \"" + std::string(line) + "\"", line_no);
        std::uint32_t u = 0, v = 0;
        if (!parse_u32(a, u) || !parse_u32(b, v))
            throw ParseError("non-integer edge endpoint in \"" + std::string(line) + "\"", line_no);

        any_node = true;
        max_node = std::max({max_node, u, v});
        if (u == v) {
            ++dropped;
            continue;
        }
        const std::uint64_t key =
            (static_cast<std::uint64_t>(std::min(u, v)) << 32) | std::max(u, v);
        if (!seen.insert(key).second) {
            ++dropped;
            continue;
        }
        edges.emplace_back(u, v);
    }

    NodeId n = any_node ? max_node + 1 : 0;
    if (has_pin) n = std::max(n, pinned_nodes);
    LoadedEdgeList out;
    out.graph = Graph::from_edges(n, edges);
    out.dropped = dropped;
    return out;
}

std::string save_edge_list(const Graph& g) {
    std::string out = "# nodes " + std::to_string(g.node_count()) + "\n";
    for (const auto& [u, v] : g.edges()) {
        out += std::to_string(u);
        out += ' ';
        out += std::to_string(v);
        out += '\n';
    }
    return out;
}

LoadedEdgeList load_edge_list_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot open graph file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_edge_list(buf.str());
}

void save_edge_list_file(const Graph& g, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw UsageError("cannot write graph file: " + path);
    out << save_edge_list(g);
}

} // namespace netwalk

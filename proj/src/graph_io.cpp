#include "rwcut/graph_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>

#include "rwcut/error.hpp"

namespace rwcut {
namespace {

std::string where(std::size_t line_no) { return "line " + std::to_string(line_no) + ": "; }

VertexId parse_vertex(const std::string& token, std::size_t line_no) {
    std::uint64_t value = 0;
    const auto* first = token.data();
    const auto* last = token.data() + token.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last || value >= std::numeric_limits<VertexId>::max()) {
        throw ParseError(where(line_no) + "bad vertex id '" + token + "'");
    }
    return static_cast<VertexId>(value);
}

double parse_weight(const std::string& token, std::size_t line_no) {
    std::size_t used = 0;
    double w = 0.0;
    try {
        w = std::stod(token, &used);
    } catch (const std::exception&) {
        throw ParseError(where(line_no) + "bad weight '" + token + "'");
    }
    if (used != token.size()) {
        throw ParseError(where(line_no) + "bad weight '" + token + "'");
    }
    if (!(w > 0.0) || !std::isfinite(w)) {
        throw ParseError(where(line_no) + "weight must be positive and finite");
    }
    return w;
}

std::ifstream open_in(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw ParseError("cannot open " + path.string());
    }
    return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    return out;
}

} // namespace

WeightedGraph load_graph(std::istream& in) {
    std::vector<Edge> edges;
    std::size_t vertex_count = 0;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            std::istringstream directive(line.substr(hash + 1));
            std::string key;
            std::size_t declared = 0;
            if (directive >> key && key == "vertices:" && directive >> declared) {
                vertex_count = std::max(vertex_count, declared);
            }
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string a, b, w, extra;
        if (!(fields >> a)) {
            continue;
        }
        if (!(fields >> b)) {
            throw ParseError(where(line_no) + "expected 'u v [w]'");
        }
        const VertexId u = parse_vertex(a, line_no);
        const VertexId v = parse_vertex(b, line_no);
        double weight = 1.0;
        if (fields >> w) {
            weight = parse_weight(w, line_no);
        }
        if (fields >> extra) {
            throw ParseError(where(line_no) + "trailing field '" + extra + "'");
        }
        if (u == v) {
            throw ParseError(where(line_no) + "self-loop on vertex " + a);
        }
        vertex_count = std::max<std::size_t>(vertex_count, std::max(u, v) + std::size_t{1});
        edges.push_back({u, v, weight});
    }
    return WeightedGraph(vertex_count, edges);
}

WeightedGraph load_graph(const std::filesystem::path& path) {
    auto in = open_in(path);
    return load_graph(in);
}

void write_graph(std::ostream& out, const WeightedGraph& g) {
    out << "# vertices: " << g.vertex_count() << '\n';
    out << std::setprecision(17);
    for (const Edge& e : g.edges()) {
        out << e.u << ' ' << e.v << ' ' << e.weight << '\n';
    }
}

void write_graph(const std::filesystem::path& path, const WeightedGraph& g) {
    auto out = open_out(path);
    write_graph(out, g);
}

void write_partition(std::ostream& out, const Partition& sides) {
    for (std::size_t v = 0; v < sides.size(); ++v) {
        out << v << ' ' << (sides[v] == Side::Left ? 'L' : 'R') << '\n';
    }
}

void write_partition(const std::filesystem::path& path, const Partition& sides) {
    auto out = open_out(path);
    write_partition(out, sides);
}

Partition read_partition(std::istream& in, std::size_t vertex_count) {
    Partition sides(vertex_count, Side::Left);
    std::vector<bool> seen(vertex_count, false);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) {
            line.erase(hash);
        }
        std::istringstream fields(line);
        std::string id, label;
        if (!(fields >> id)) {
            continue;
        }
        if (!(fields >> label) || (label != "L" && label != "R")) {
            throw ParseError(where(line_no) + "expected 'vertex_id L|R'");
        }
        const VertexId v = parse_vertex(id, line_no);
        if (v >= vertex_count || seen[v]) {
            throw ParseError(where(line_no) + "vertex " + id + " out of range or repeated");
        }
        seen[v] = true;
        sides[v] = label == "L" ? Side::Left : Side::Right;
    }
    for (std::size_t v = 0; v < vertex_count; ++v) {
        if (!seen[v]) {
            throw ParseError("partition is missing vertex " + std::to_string(v));
        }
    }
    return sides;
}

Partition read_partition(const std::filesystem::path& path, std::size_t vertex_count) {
    auto in = open_in(path);
    return read_partition(in, vertex_count);
}

} // namespace rwcut

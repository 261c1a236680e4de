#include "faultpath/graph.hpp"

#include <algorithm>
#include <fstream>
#include <limits>
#include <sstream>

namespace faultpath {

Graph::Graph(int n, bool allow_parallel) : adj_(static_cast<std::size_t>(n)), allow_parallel_(allow_parallel) {
    if (n < 0) throw InvalidArgumentError("negative vertex count");
}

Vertex Graph::add_vertex() {
    adj_.emplace_back();
    return n() - 1;
}

void Graph::check_vertex(Vertex v) const {
    if (v < 0 || v >= n()) throw InvalidArgumentError("vertex id out of range: " + std::to_string(v));
}

EdgeId Graph::add_edge(Vertex u, Vertex v, CompositeWeight w) {
    EdgeId id = edge_slots();
    add_edge_with_id(id, u, v, w);
    return id;
}

void Graph::add_edge_with_id(EdgeId id, Vertex u, Vertex v, CompositeWeight w) {
    check_vertex(u);
    check_vertex(v);
    if (u == v) throw InvalidArgumentError("self-loop at vertex " + std::to_string(u));
    if (id < 0) throw InvalidArgumentError("negative edge id");
    if (present(id)) throw DuplicateEdgeError("edge id already in use: " + std::to_string(id));
    if (!allow_parallel_ && find_edge(u, v))
        throw DuplicateEdgeError("parallel edge " + std::to_string(u) + "-" + std::to_string(v));
    auto slot = static_cast<std::size_t>(id);
    if (slot >= edges_.size()) {
        edges_.resize(slot + 1);
        present_.resize(slot + 1, 0);
    }
    edges_[slot] = Edge{u, v, w, id};
    present_[slot] = 1;
    adj_[static_cast<std::size_t>(u)].push_back({v, id});
    adj_[static_cast<std::size_t>(v)].push_back({u, id});
    ++live_edges_;
}

void Graph::remove_edge(EdgeId id) {
    if (!present(id)) throw InvalidDeleteError("edge not present: " + std::to_string(id));
    const Edge& e = edges_[static_cast<std::size_t>(id)];
    for (Vertex x : {e.u, e.v}) {
        auto& list = adj_[static_cast<std::size_t>(x)];
        list.erase(std::find_if(list.begin(), list.end(), [id](const Incidence& in) { return in.id == id; }));
    }
    present_[static_cast<std::size_t>(id)] = 0;
    --live_edges_;
}

void Graph::set_weight(EdgeId id, CompositeWeight w) {
    if (!present(id)) throw InvalidArgumentError("edge not present: " + std::to_string(id));
    edges_[static_cast<std::size_t>(id)].w = w;
}

std::optional<EdgeId> Graph::find_edge(Vertex u, Vertex v) const {
    if (u < 0 || u >= n()) return std::nullopt;
    for (const auto& in : adj_[static_cast<std::size_t>(u)])
        if (in.to == v) return in.id;
    return std::nullopt;
}

std::vector<EdgeId> Graph::edge_ids() const {
    std::vector<EdgeId> ids;
    ids.reserve(static_cast<std::size_t>(live_edges_));
    for (EdgeId id = 0; id < edge_slots(); ++id)
        if (present_[static_cast<std::size_t>(id)]) ids.push_back(id);
    return ids;
}

std::uint64_t Graph::total_base_weight() const {
    std::uint64_t sum = 0;
    for (EdgeId id : edge_ids())
        if (__builtin_add_overflow(sum, edge(id).w.base, &sum)) throw OverflowError("total weight overflow");
    return sum;
}

std::uint64_t parse_weight(const std::string& token, std::uint64_t scale) {
    if (token.empty()) throw FormatError("empty weight");
    if (token[0] == '-') throw FormatError("negative weight: " + token);
    auto dot = token.find('.');
    std::string whole = token.substr(0, dot);
    std::string frac = dot == std::string::npos ? "" : token.substr(dot + 1);
    auto digits_only = [](const std::string& s) {
        return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits_only(whole) || !digits_only(frac) || (whole.empty() && frac.empty()))
        throw FormatError("malformed weight: " + token);
    while (!frac.empty() && frac.back() == '0') frac.pop_back();
    if (!frac.empty() && scale == 1) throw FormatError("non-integer weight without --scale: " + token);

    unsigned __int128 w = 0;
    for (char c : whole) {
        w = w * 10 + static_cast<unsigned>(c - '0');
        if (w > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("weight too large: " + token);
    }
    unsigned __int128 num = w * scale;
    unsigned __int128 f = 0, den = 1;
    for (char c : frac) {
        f = f * 10 + static_cast<unsigned>(c - '0');
        den *= 10;
        if (den > (static_cast<unsigned __int128>(1) << 100)) throw FormatError("too many decimals: " + token);
    }
    unsigned __int128 fs = f * scale;
    if (fs % den != 0) throw FormatError("weight not integral after scaling: " + token);
    num += fs / den;
    if (num > std::numeric_limits<std::uint64_t>::max()) throw OverflowError("scaled weight too large: " + token);
    return static_cast<std::uint64_t>(num);
}

namespace {

long long parse_int(const std::string& tok, const std::string& line) {
    std::size_t pos = 0;
    long long v = 0;
    try {
        v = std::stoll(tok, &pos);
    } catch (const std::exception&) {
        throw FormatError("bad integer '" + tok + "' in line: " + line);
    }
    if (pos != tok.size()) throw FormatError("bad integer '" + tok + "' in line: " + line);
    return v;
}

}  // namespace

Graph read_graph_block(std::istream& in, std::uint64_t scale, std::vector<std::string>& rest) {
    if (scale == 0) throw FormatError("scale must be positive");
    std::string line;
    long long n = -1, m = -1, seen = 0;
    Graph g;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string tag;
        if (!(ls >> tag) || tag == "c") continue;
        if (tag == "p") {
            if (n >= 0) throw FormatError("duplicate header: " + line);
            std::string a, b, extra;
            if (!(ls >> a >> b) || (ls >> extra)) throw FormatError("bad header: " + line);
            n = parse_int(a, line);
            m = parse_int(b, line);
            if (n < 0 || m < 0 || n > (1 << 24)) throw FormatError("bad header sizes: " + line);
            g = Graph(static_cast<int>(n));
        } else if (tag == "e") {
            if (n < 0) throw FormatError("edge before header: " + line);
            std::string a, b, w, extra;
            if (!(ls >> a >> b >> w) || (ls >> extra)) throw FormatError("bad edge line: " + line);
            long long u = parse_int(a, line), v = parse_int(b, line);
            if (u < 0 || v < 0 || u >= n || v >= n) throw FormatError("vertex out of range: " + line);
            if (u == v) throw FormatError("self-loop: " + line);
            std::uint64_t base = parse_weight(w, scale);
            try {
                g.add_edge(static_cast<Vertex>(u), static_cast<Vertex>(v), {base, 0});
            } catch (const DuplicateEdgeError&) {
                throw FormatError("parallel edge: " + line);
            }
            ++seen;
        } else {
            if (n < 0) throw FormatError("unexpected line before header: " + line);
            rest.push_back(line);
            while (std::getline(in, line)) {
                std::istringstream ls2(line);
                std::string t2;
                if (!(ls2 >> t2) || t2 == "c") continue;
                rest.push_back(line);
            }
            break;
        }
    }
    if (n < 0) throw FormatError("missing header line");
    if (seen != m) throw FormatError("header declares " + std::to_string(m) + " edges, found " + std::to_string(seen));
    // Any simple path has fewer than n edges; keep n * total comfortably in range.
    std::uint64_t total = g.total_base_weight();
    unsigned __int128 bound = static_cast<unsigned __int128>(total) * static_cast<unsigned>(std::max<long long>(n, 1)) * 4;
    if (bound > (static_cast<unsigned __int128>(1) << 62)) throw OverflowError("weights too large for exact sums");
    return g;
}

Graph read_graph(std::istream& in, std::uint64_t scale) {
    std::vector<std::string> rest;
    Graph g = read_graph_block(in, scale, rest);
    if (!rest.empty()) throw FormatError("unexpected line: " + rest.front());
    return g;
}

Graph load_graph(const std::string& path, std::uint64_t scale) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open graph file: " + path);
    return read_graph(in, scale);
}

void write_graph(std::ostream& out, const Graph& g) {
    auto ids = g.edge_ids();
    out << "p " << g.n() << ' ' << ids.size() << '\n';
    for (EdgeId id : ids) {
        const Edge& e = g.edge(id);
        out << "e " << e.u << ' ' << e.v << ' ' << e.w.base << '\n';
    }
}

}  // namespace faultpath

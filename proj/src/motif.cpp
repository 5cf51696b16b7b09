#include "mglc/motif.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <sstream>
#include <unordered_map>

#include "mglc/errors.hpp"

namespace mglc {

namespace {

// Serialize a graph under a fixed vertex order: atom labels, then the sorted
// edge list in reordered indices. Byte-comparable.
std::string serialize_ordered(const MolecularGraph& g, const std::vector<int>& order) {
    int n = g.atom_count();
    std::vector<int> position(n);
    for (int i = 0; i < n; ++i) position[order[i]] = i;

    std::string out;
    out.reserve(static_cast<std::size_t>(n) + 3 * g.bonds.size() + 2);
    out.push_back(static_cast<char>(n));
    for (int i = 0; i < n; ++i) {
        const Atom& a = g.atoms[order[i]];
        out.push_back(static_cast<char>(static_cast<int>(a.element) | (a.aromatic ? 0x40 : 0)));
    }
    std::vector<std::array<unsigned char, 3>> edges;
    edges.reserve(g.bonds.size());
    for (const Bond& b : g.bonds) {
        int u = position[b.a], v = position[b.b];
        if (u > v) std::swap(u, v);
        edges.push_back({static_cast<unsigned char>(u), static_cast<unsigned char>(v),
                         static_cast<unsigned char>(b.order)});
    }
    std::sort(edges.begin(), edges.end());
    out.push_back(static_cast<char>(edges.size()));
    for (const auto& e : edges) {
        out.push_back(static_cast<char>(e[0]));
        out.push_back(static_cast<char>(e[1]));
        out.push_back(static_cast<char>(e[2]));
    }
    return out;
}

// One round of neighborhood-label refinement; colors come in dense, go out
// dense. Returns true when the partition got strictly finer.
bool refine_once(const MolecularGraph& g, std::vector<int>& colors) {
    int n = g.atom_count();
    std::vector<std::pair<std::vector<int>, int>> sigs(n); // (signature, vertex)
    for (int v = 0; v < n; ++v) {
        std::vector<int> sig;
        sig.push_back(colors[v]);
        std::vector<std::pair<int, int>> nbr;
        nbr.reserve(g.adjacency[v].size());
        for (const auto& [to, bond] : g.adjacency[v])
            nbr.push_back({static_cast<int>(g.bonds[bond].order), colors[to]});
        std::sort(nbr.begin(), nbr.end());
        for (const auto& [o, c] : nbr) {
            sig.push_back(o);
            sig.push_back(c);
        }
        sigs[v] = {std::move(sig), v};
    }
    std::vector<std::pair<std::vector<int>, int>> sorted = sigs;
    std::sort(sorted.begin(), sorted.end());
    std::map<std::vector<int>, int> rank;
    for (const auto& [sig, v] : sorted) {
        (void)v;
        rank.emplace(sig, static_cast<int>(rank.size()));
    }
    int old_count = 1 + *std::max_element(colors.begin(), colors.end());
    for (int v = 0; v < n; ++v) colors[v] = rank[sigs[v].first];
    int new_count = static_cast<int>(rank.size());
    return new_count > old_count;
}

void refine(const MolecularGraph& g, std::vector<int>& colors) {
    while (refine_once(g, colors)) {
    }
}

// Exhaustive canonical search: individualize each member of the first
// non-singleton color class, re-refine, recurse; keep the smallest
// serialization. Motifs are small so the branching stays shallow.
void canonical_search(const MolecularGraph& g, std::vector<int> colors, std::string& best) {
    int n = g.atom_count();
    int target_class = -1;
    std::vector<int> counts(n, 0);
    for (int c : colors) counts[c]++;
    for (int c = 0; c < n; ++c) {
        if (counts[c] > 1) {
            target_class = c;
            break;
        }
    }
    if (target_class < 0) {
        std::vector<int> order(n);
        for (int v = 0; v < n; ++v) order[colors[v]] = v;
        std::string code = serialize_ordered(g, order);
        if (best.empty() || code < best) best = code;
        return;
    }
    for (int v = 0; v < n; ++v) {
        if (colors[v] != target_class) continue;
        std::vector<int> next = colors;
        // Split {v} off in front of its class: everything at or above the
        // class shifts up by one, v takes the old class value.
        for (int u = 0; u < n; ++u)
            if (next[u] >= target_class) next[u]++;
        next[v] = target_class;
        refine(g, next);
        canonical_search(g, std::move(next), best);
    }
}

} // namespace

int MotifDictionary::find(const std::string& code) const {
    for (int i = 0; i < size(); ++i)
        if (entries[i].canonical_code == code) return i;
    return -1;
}

std::vector<int> find_bridge_bonds(const MolecularGraph& g) {
    std::vector<int> result;
    for (int id = 0; id < g.bond_count(); ++id) {
        const Bond& b = g.bonds[id];
        if (g.degree[b.a] < 2 || g.degree[b.b] < 2) continue;
        if (!g.ring_atom[b.a] && !g.ring_atom[b.b]) continue;
        if (g.bond_in_ring[id]) continue; // must be a graph-theoretic bridge
        result.push_back(id);
    }
    return result;
}

std::vector<Motif> extract_motifs(const MolecularGraph& g) {
    std::vector<int> bridges = find_bridge_bonds(g);
    std::vector<bool> detached(g.bond_count(), false);
    for (int id : bridges) detached[id] = true;

    int n = g.atom_count();
    std::vector<int> component(n, -1);
    int n_components = 0;
    for (int start = 0; start < n; ++start) {
        if (component[start] != -1) continue;
        int c = n_components++;
        std::vector<int> stack = {start};
        component[start] = c;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [to, bond] : g.adjacency[v]) {
                if (detached[bond] || component[to] != -1) continue;
                component[to] = c;
                stack.push_back(to);
            }
        }
    }

    std::vector<Motif> motifs(n_components);
    std::vector<std::vector<int>> members(n_components);
    std::vector<int> local_index(n, -1);
    for (int v = 0; v < n; ++v) {
        local_index[v] = static_cast<int>(members[component[v]].size());
        members[component[v]].push_back(v);
    }
    for (int c = 0; c < n_components; ++c) {
        MolecularGraph& m = motifs[c].graph;
        for (int v : members[c]) {
            Atom a = g.atoms[v];
            a.index = local_index[v];
            m.atoms.push_back(a);
        }
    }
    for (int id = 0; id < g.bond_count(); ++id) {
        if (detached[id]) continue;
        const Bond& b = g.bonds[id];
        int c = component[b.a];
        motifs[c].graph.bonds.push_back({local_index[b.a], local_index[b.b], b.order});
    }
    for (Motif& m : motifs) {
        finalize_graph(m.graph);
        m.canonical_code = canonical_code(m.graph);
    }
    return motifs;
}

std::string canonical_code(const MolecularGraph& g) {
    int n = g.atom_count();
    if (n == 0) throw DataError("cannot canonicalize an empty graph");
    if (n > 64) throw DataError("canonical_code limited to 64 atoms");

    // Initial colors from (element, aromatic).
    std::vector<std::pair<int, int>> init(n);
    for (int v = 0; v < n; ++v)
        init[v] = {static_cast<int>(g.atoms[v].element) * 2 + (g.atoms[v].aromatic ? 1 : 0), v};
    std::vector<std::pair<int, int>> sorted = init;
    std::sort(sorted.begin(), sorted.end());
    std::map<int, int> rank;
    for (const auto& [label, v] : sorted) {
        (void)v;
        rank.emplace(label, static_cast<int>(rank.size()));
    }
    std::vector<int> colors(n);
    for (int v = 0; v < n; ++v) colors[v] = rank[init[v].first];

    refine(g, colors);
    std::string best;
    canonical_search(g, std::move(colors), best);
    return best;
}

MotifDictionary build_dictionary(const std::vector<MolecularGraph>& corpus, int top_k) {
    if (top_k <= 0) throw DataError("dictionary capacity K must be positive");
    if (corpus.empty()) throw DataError("motif corpus is empty");

    struct Tally {
        long long count = 0;
        std::string example;
    };
    std::unordered_map<std::string, Tally> counts;
    for (const MolecularGraph& g : corpus) {
        for (const Motif& m : extract_motifs(g)) {
            Tally& t = counts[m.canonical_code];
            t.count++;
            if (t.example.empty()) t.example = to_smiles(m.graph);
        }
    }

    std::vector<MotifDictionary::Entry> entries;
    entries.reserve(counts.size());
    for (auto& [code, tally] : counts)
        entries.push_back({code, tally.count, std::move(tally.example)});
    std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) {
        if (x.frequency != y.frequency) return x.frequency > y.frequency;
        return x.canonical_code < y.canonical_code;
    });
    if (static_cast<int>(entries.size()) > top_k) entries.resize(top_k);

    MotifDictionary dict;
    dict.entries = std::move(entries);
    return dict;
}

std::string code_to_hex(const std::string& code) {
    static const char* digits = "0123456789abcdef";
    std::string hex;
    hex.reserve(code.size() * 2);
    for (unsigned char c : code) {
        hex.push_back(digits[c >> 4]);
        hex.push_back(digits[c & 0xf]);
    }
    return hex;
}

std::string hex_to_code(const std::string& hex) {
    if (hex.size() % 2 != 0) throw ParseError("odd-length hex code", 0);
    auto nibble = [&](char c, std::size_t at) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        if (c >= 'A' && c <= 'F') return c - 'A' + 10;
        throw ParseError("invalid hex digit", at);
    };
    std::string code;
    code.reserve(hex.size() / 2);
    for (std::size_t i = 0; i < hex.size(); i += 2)
        code.push_back(static_cast<char>(nibble(hex[i], i) << 4 | nibble(hex[i + 1], i + 1)));
    return code;
}

std::string dictionary_to_text(const MotifDictionary& dict) {
    std::ostringstream os;
    for (const auto& e : dict.entries)
        os << e.frequency << '\t' << code_to_hex(e.canonical_code) << '\t' << e.example_smiles
           << '\n';
    return os.str();
}

MotifDictionary dictionary_from_text(const std::string& text) {
    MotifDictionary dict;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::size_t t1 = line.find('\t');
        std::size_t t2 = t1 == std::string::npos ? std::string::npos : line.find('\t', t1 + 1);
        if (t1 == std::string::npos || t2 == std::string::npos)
            throw ParseError("dictionary line needs 3 tab-separated fields", line_no);
        MotifDictionary::Entry e;
        e.frequency = std::stoll(line.substr(0, t1));
        e.canonical_code = hex_to_code(line.substr(t1 + 1, t2 - t1 - 1));
        e.example_smiles = line.substr(t2 + 1);
        if (e.frequency <= 0) throw ParseError("dictionary frequency must be positive", line_no);
        dict.entries.push_back(std::move(e));
    }
    return dict;
}

bool contains_subgraph(const MolecularGraph& host, const MolecularGraph& pattern) {
    int np = pattern.atom_count(), nh = host.atom_count();
    if (np > nh || pattern.bond_count() > host.bond_count()) return false;

    // Order pattern vertices so each one (after the first) touches an earlier
    // one; the pattern is connected so a DFS order works.
    std::vector<int> order;
    std::vector<bool> seen(np, false);
    std::vector<int> stack = {0};
    seen[0] = true;
    while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        order.push_back(v);
        for (const auto& [to, bond] : pattern.adjacency[v]) {
            (void)bond;
            if (!seen[to]) {
                seen[to] = true;
                stack.push_back(to);
            }
        }
    }

    std::vector<int> assign(np, -1);
    std::vector<bool> used(nh, false);
    auto labels_match = [&](int pv, int hv) {
        return pattern.atoms[pv].element == host.atoms[hv].element &&
               pattern.atoms[pv].aromatic == host.atoms[hv].aromatic;
    };
    auto host_bond_order = [&](int hu, int hv, BondOrder& out) {
        for (const auto& [to, bond] : host.adjacency[hu]) {
            if (to == hv) {
                out = host.bonds[bond].order;
                return true;
            }
        }
        return false;
    };

    std::function<bool(std::size_t)> match = [&](std::size_t depth) -> bool {
        if (depth == order.size()) return true;
        int pv = order[depth];
        for (int hv = 0; hv < nh; ++hv) {
            if (used[hv] || !labels_match(pv, hv)) continue;
            bool ok = true;
            for (const auto& [pto, pbond] : pattern.adjacency[pv]) {
                if (assign[pto] < 0) continue;
                BondOrder horder;
                if (!host_bond_order(hv, assign[pto], horder) ||
                    horder != pattern.bonds[pbond].order) {
                    ok = false;
                    break;
                }
            }
            if (!ok) continue;
            assign[pv] = hv;
            used[hv] = true;
            if (match(depth + 1)) return true;
            assign[pv] = -1;
            used[hv] = false;
        }
        return false;
    };
    return match(0);
}

} // namespace mglc

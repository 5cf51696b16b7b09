#include "mglc/molgraph.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>

#include "mglc/errors.hpp"

namespace mglc {

const char* element_symbol(Element e) {
    switch (e) {
        case Element::B: return "B";
        case Element::C: return "C";
        case Element::N: return "N";
        case Element::O: return "O";
        case Element::P: return "P";
        case Element::S: return "S";
        case Element::F: return "F";
        case Element::Cl: return "Cl";
        case Element::Br: return "Br";
        case Element::I: return "I";
    }
    return "?";
}

namespace {

bool aromatic_capable(Element e) {
    switch (e) {
        case Element::B:
        case Element::C:
        case Element::N:
        case Element::O:
        case Element::P:
        case Element::S:
            return true;
        default:
            return false;
    }
}

struct PendingRing {
    int atom;
    bool has_order;
    BondOrder order;
    std::size_t offset; // where the closure was opened, for error reporting
};

void add_bond(MolecularGraph& g, int a, int b, BondOrder order, std::size_t offset) {
    if (a == b) throw ParseError("ring closure bonds an atom to itself", offset);
    for (const auto& [nbr, bond] : g.adjacency[a]) {
        (void)bond;
        if (nbr == b) throw ParseError("duplicate bond between the same atom pair", offset);
    }
    int id = g.bond_count();
    g.bonds.push_back({a, b, order});
    g.adjacency[a].push_back({b, id});
    g.adjacency[b].push_back({a, id});
}

// Iterative bridge finding (Tarjan lowlink). Parallel edges are rejected at
// construction, so skipping the entry bond by id is sufficient.
std::vector<bool> find_bridges(const MolecularGraph& g) {
    int n = g.atom_count();
    std::vector<bool> is_bridge(g.bond_count(), false);
    std::vector<int> disc(n, -1), low(n, 0);
    int timer = 0;

    struct Frame {
        int v;
        int parent_bond;
        std::size_t edge_pos;
    };
    std::vector<Frame> stack;
    for (int root = 0; root < n; ++root) {
        if (disc[root] != -1) continue;
        stack.push_back({root, -1, 0});
        disc[root] = low[root] = timer++;
        while (!stack.empty()) {
            Frame& f = stack.back();
            if (f.edge_pos < g.adjacency[f.v].size()) {
                auto [to, bond] = g.adjacency[f.v][f.edge_pos++];
                if (bond == f.parent_bond) continue;
                if (disc[to] == -1) {
                    disc[to] = low[to] = timer++;
                    stack.push_back({to, bond, 0});
                } else {
                    low[f.v] = std::min(low[f.v], disc[to]);
                }
            } else {
                stack.pop_back();
                if (!stack.empty()) {
                    Frame& parent = stack.back();
                    low[parent.v] = std::min(low[parent.v], low[f.v]);
                    if (low[f.v] > disc[parent.v]) is_bridge[f.parent_bond] = true;
                }
            }
        }
    }
    return is_bridge;
}

} // namespace

void finalize_graph(MolecularGraph& g) {
    int n = g.atom_count();
    g.adjacency.assign(n, {});
    std::set<std::pair<int, int>> seen;
    for (int id = 0; id < g.bond_count(); ++id) {
        const Bond& b = g.bonds[id];
        if (b.a == b.b || b.a < 0 || b.b < 0 || b.a >= n || b.b >= n)
            throw DataError("bond endpoints invalid");
        auto key = std::minmax(b.a, b.b);
        if (!seen.insert(key).second) throw DataError("duplicate bond between the same atom pair");
        g.adjacency[b.a].push_back({b.b, id});
        g.adjacency[b.b].push_back({b.a, id});
    }
    g.degree.assign(n, 0);
    for (int i = 0; i < n; ++i) g.degree[i] = static_cast<int>(g.adjacency[i].size());

    if (n > 0) {
        std::vector<bool> visited(n, false);
        std::vector<int> todo = {0};
        visited[0] = true;
        int reached = 1;
        while (!todo.empty()) {
            int v = todo.back();
            todo.pop_back();
            for (const auto& [to, bond] : g.adjacency[v]) {
                (void)bond;
                if (!visited[to]) {
                    visited[to] = true;
                    ++reached;
                    todo.push_back(to);
                }
            }
        }
        if (reached != n) throw DataError("molecular graph is not connected");
    }

    std::vector<bool> bridge = find_bridges(g);
    g.bond_in_ring.assign(g.bond_count(), false);
    g.ring_atom.assign(n, false);
    for (int id = 0; id < g.bond_count(); ++id) {
        if (!bridge[id]) {
            g.bond_in_ring[id] = true;
            g.ring_atom[g.bonds[id].a] = true;
            g.ring_atom[g.bonds[id].b] = true;
        }
    }
}

std::vector<bool> ring_membership(const MolecularGraph& g) {
    std::vector<bool> bridge = find_bridges(g);
    std::vector<bool> ring(g.atom_count(), false);
    for (int id = 0; id < g.bond_count(); ++id) {
        if (!bridge[id]) {
            ring[g.bonds[id].a] = true;
            ring[g.bonds[id].b] = true;
        }
    }
    return ring;
}

MolecularGraph parse_smiles(std::string_view text) {
    MolecularGraph g;
    std::vector<int> branch_stack;
    std::map<int, PendingRing> open_rings;
    int prev_atom = -1;
    bool has_pending_order = false;
    BondOrder pending_order = BondOrder::Single;
    std::size_t pending_offset = 0;

    auto attach_atom = [&](Element el, bool aromatic, std::size_t offset) {
        int idx = g.atom_count();
        g.atoms.push_back({el, aromatic, idx});
        g.adjacency.push_back({});
        if (prev_atom >= 0) {
            BondOrder order;
            if (has_pending_order) {
                order = pending_order;
            } else if (g.atoms[prev_atom].aromatic && aromatic) {
                order = BondOrder::Aromatic;
            } else {
                order = BondOrder::Single;
            }
            add_bond(g, prev_atom, idx, order, offset);
        }
        has_pending_order = false;
        prev_atom = idx;
    };

    auto ring_closure = [&](int digit, std::size_t offset) {
        if (prev_atom < 0) throw ParseError("ring closure before any atom", offset);
        auto it = open_rings.find(digit);
        if (it == open_rings.end()) {
            open_rings[digit] = {prev_atom, has_pending_order, pending_order, offset};
            has_pending_order = false;
            return;
        }
        PendingRing open = it->second;
        open_rings.erase(it);
        BondOrder order;
        if (open.has_order && has_pending_order) {
            if (open.order != pending_order)
                throw ParseError("conflicting bond orders on ring closure", offset);
            order = open.order;
        } else if (open.has_order) {
            order = open.order;
        } else if (has_pending_order) {
            order = pending_order;
        } else if (g.atoms[open.atom].aromatic && g.atoms[prev_atom].aromatic) {
            order = BondOrder::Aromatic;
        } else {
            order = BondOrder::Single;
        }
        add_bond(g, open.atom, prev_atom, order, offset);
        has_pending_order = false;
    };

    std::size_t i = 0;
    while (i < text.size()) {
        char c = text[i];
        std::size_t offset = i;
        switch (c) {
            case 'C':
                if (i + 1 < text.size() && text[i + 1] == 'l') {
                    attach_atom(Element::Cl, false, offset);
                    i += 2;
                } else {
                    attach_atom(Element::C, false, offset);
                    ++i;
                }
                break;
            case 'B':
                if (i + 1 < text.size() && text[i + 1] == 'r') {
                    attach_atom(Element::Br, false, offset);
                    i += 2;
                } else {
                    attach_atom(Element::B, false, offset);
                    ++i;
                }
                break;
            case 'N': attach_atom(Element::N, false, offset); ++i; break;
            case 'O': attach_atom(Element::O, false, offset); ++i; break;
            case 'P': attach_atom(Element::P, false, offset); ++i; break;
            case 'S': attach_atom(Element::S, false, offset); ++i; break;
            case 'F': attach_atom(Element::F, false, offset); ++i; break;
            case 'I': attach_atom(Element::I, false, offset); ++i; break;
            case 'b': attach_atom(Element::B, true, offset); ++i; break;
            case 'c': attach_atom(Element::C, true, offset); ++i; break;
            case 'n': attach_atom(Element::N, true, offset); ++i; break;
            case 'o': attach_atom(Element::O, true, offset); ++i; break;
            case 'p': attach_atom(Element::P, true, offset); ++i; break;
            case 's': attach_atom(Element::S, true, offset); ++i; break;
            case '-': pending_order = BondOrder::Single;   has_pending_order = true; pending_offset = offset; ++i; break;
            case '=': pending_order = BondOrder::Double;   has_pending_order = true; pending_offset = offset; ++i; break;
            case '#': pending_order = BondOrder::Triple;   has_pending_order = true; pending_offset = offset; ++i; break;
            case ':': pending_order = BondOrder::Aromatic; has_pending_order = true; pending_offset = offset; ++i; break;
            case '(':
                if (prev_atom < 0) throw ParseError("branch before any atom", offset);
                if (has_pending_order) throw ParseError("bond symbol before branch open", offset);
                branch_stack.push_back(prev_atom);
                ++i;
                break;
            case ')':
                if (branch_stack.empty()) throw ParseError("unbalanced parentheses", offset);
                if (has_pending_order) throw ParseError("dangling bond symbol before branch close", offset);
                prev_atom = branch_stack.back();
                branch_stack.pop_back();
                ++i;
                break;
            case '%': {
                if (i + 2 >= text.size() || text[i + 1] < '0' || text[i + 1] > '9' ||
                    text[i + 2] < '0' || text[i + 2] > '9')
                    throw ParseError("malformed %nn ring closure", offset);
                int digit = (text[i + 1] - '0') * 10 + (text[i + 2] - '0');
                ring_closure(digit, offset);
                i += 3;
                break;
            }
            default:
                if (c >= '1' && c <= '9') {
                    ring_closure(c - '0', offset);
                    ++i;
                } else {
                    throw ParseError(std::string("unsupported token '") + c + "'", offset);
                }
        }
    }

    if (has_pending_order) throw ParseError("dangling bond symbol at end of input", pending_offset);
    if (!branch_stack.empty()) throw ParseError("unbalanced parentheses", text.size());
    if (!open_rings.empty())
        throw ParseError("unmatched ring closure", open_rings.begin()->second.offset);
    if (g.atoms.empty()) throw ParseError("empty SMILES", 0);

    finalize_graph(g);
    return g;
}

std::string to_smiles(const MolecularGraph& g) {
    if (g.atoms.empty()) return "";
    int n = g.atom_count();

    // DFS spanning tree from atom 0; every non-tree bond becomes a ring
    // closure digit recorded on both endpoints.
    std::vector<bool> bond_in_tree(g.bond_count(), false);
    std::vector<bool> visited(n, false);
    {
        std::vector<int> stack = {0};
        visited[0] = true;
        while (!stack.empty()) {
            int v = stack.back();
            stack.pop_back();
            for (const auto& [to, bond] : g.adjacency[v]) {
                if (!visited[to]) {
                    visited[to] = true;
                    bond_in_tree[bond] = true;
                    stack.push_back(to);
                }
            }
        }
    }

    std::vector<std::vector<std::pair<int, int>>> ring_digits(n); // (digit, bond)
    {
        int next_digit = 1;
        for (int id = 0; id < g.bond_count(); ++id) {
            if (bond_in_tree[id]) continue;
            if (next_digit >= 100) throw DataError("too many ring closures to serialize");
            ring_digits[g.bonds[id].a].push_back({next_digit, id});
            ring_digits[g.bonds[id].b].push_back({next_digit, id});
            ++next_digit;
        }
    }

    auto atom_token = [&](int v) {
        const Atom& a = g.atoms[v];
        std::string sym = element_symbol(a.element);
        if (a.aromatic)
            for (char& ch : sym) ch = static_cast<char>(ch - 'A' + 'a');
        return sym;
    };
    // The implicit bond is single, or aromatic when both atoms are aromatic,
    // so those two cases need an explicit symbol only in the flipped pairing.
    auto bond_token = [&](BondOrder o, int u, int v) -> std::string {
        bool both_aromatic = g.atoms[u].aromatic && g.atoms[v].aromatic;
        switch (o) {
            case BondOrder::Single: return both_aromatic ? "-" : "";
            case BondOrder::Double: return "=";
            case BondOrder::Triple: return "#";
            case BondOrder::Aromatic: return both_aromatic ? "" : ":";
        }
        return "";
    };

    std::string out;
    std::fill(visited.begin(), visited.end(), false);
    std::vector<bool> digit_opened(100, false);
    std::function<void(int, int)> emit = [&](int v, int via_bond) {
        visited[v] = true;
        if (via_bond >= 0) {
            const Bond& b = g.bonds[via_bond];
            out += bond_token(b.order, b.a, b.b);
        }
        out += atom_token(v);
        for (const auto& [digit, bond] : ring_digits[v]) {
            const Bond& b = g.bonds[bond];
            if (!digit_opened[digit]) {
                // Opening side carries the explicit bond symbol when needed.
                out += bond_token(b.order, b.a, b.b);
                digit_opened[digit] = true;
            }
            if (digit >= 10) {
                out += '%';
                out += static_cast<char>('0' + digit / 10);
                out += static_cast<char>('0' + digit % 10);
            } else {
                out += static_cast<char>('0' + digit);
            }
        }
        std::vector<std::pair<int, int>> children; // (bond, child)
        for (const auto& [to, bond] : g.adjacency[v]) {
            if (bond_in_tree[bond] && !visited[to]) children.push_back({bond, to});
        }
        for (std::size_t k = 0; k < children.size(); ++k) {
            bool last = k + 1 == children.size();
            if (!last) out += "(";
            emit(children[k].second, children[k].first);
            if (!last) out += ")";
        }
    };
    emit(0, -1);
    return out;
}

} // namespace mglc

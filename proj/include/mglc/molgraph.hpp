#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace mglc {

enum class Element : std::uint8_t { B, C, N, O, P, S, F, Cl, Br, I };

enum class BondOrder : std::uint8_t { Single, Double, Triple, Aromatic };

const char* element_symbol(Element e);

struct Atom {
    Element element;
    bool aromatic;
    int index; // ordinal within the molecule
};

struct Bond {
    int a;
    int b;
    BondOrder order;
};

// Heavy-atom molecular graph. Hydrogens are implicit and never materialized;
// degrees count heavy-atom bonds only, with aromatic bonds counting as one.
struct MolecularGraph {
    std::vector<Atom> atoms;
    std::vector<Bond> bonds;
    std::vector<int> degree;              // incident bond count per atom
    std::vector<bool> ring_atom;          // incident to at least one cycle edge
    std::vector<bool> bond_in_ring;       // bond is not a graph-theoretic bridge
    std::vector<std::vector<std::pair<int, int>>> adjacency; // (neighbor, bond id)

    int atom_count() const { return static_cast<int>(atoms.size()); }
    int bond_count() const { return static_cast<int>(bonds.size()); }
};

// Parse one molecule in the supported SMILES dialect: atoms
// B C N O P S F Cl Br I, aromatic lowercase b c n o p s, bonds - = # :,
// branches (), ring closures 1-9 and %nn. No charges, stereochemistry,
// isotopes or bracket atoms. Throws ParseError with the byte offset of the
// offending token.
MolecularGraph parse_smiles(std::string_view text);

// Recompute per-atom ring membership: true iff the atom is incident to at
// least one non-bridge edge. Standalone form of what parse_smiles already
// fills in, usable after manual graph edits.
std::vector<bool> ring_membership(const MolecularGraph& g);

// Fill degree/ring/adjacency caches of a manually assembled graph and check
// the structural invariants (distinct endpoints, no duplicate bonds,
// connectivity).
void finalize_graph(MolecularGraph& g);

// Serialize back into the supported dialect. parse_smiles(to_smiles(g)) is
// isomorphic to g.
std::string to_smiles(const MolecularGraph& g);

} // namespace mglc

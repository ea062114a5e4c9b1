#pragma once

#include <utility>

#include "adaptt/normalize.hpp"
#include "adaptt/syntax.hpp"

namespace adaptt {

class DescTable;

struct ElaboratedCon {
  Telescope conData;        // over params ▶ (indices.Ty+)
  Ctx constructorContext;   // params ▷ conData[id ▶ ind(I)]
  Inst resultIndices;       // over constructorContext
};

// recData of the k-th recursive argument, over params ▶ X ▷ nrec (before the
// weakening past earlier recursive arguments).
Type elabRecData(const IndDesc& d, const ConDesc& c, std::size_t k);
Telescope elabConData(const IndDesc& d, const ConDesc& c);
// The inductive itself over params ▷ indices.
Type indSelf(const IndDesc& d);
// conData with the recursive placeholder replaced by the inductive. Cached.
const Telescope& conDataTied(const DescRef& d, int con);
void forgetConData(const DescRef& d);
ElaboratedCon elaborateCon(const DescRef& d, int con);
std::pair<Ctx, Type> constrType(const DescRef& d, int con);
// Type of a constructor application, given its parameters and arguments.
Type constrResultType(const tm::Constr& c);

// Right-hand side of the inductive adapter equation for constr⟨ind(I)⟦μ⟧⟩.
// Throws IndexMismatch when the adapter's source indices are not those of the
// constructor.
Term castConstr(const tm::Constr& c, const ad::Ind& f, const Normalizer& n);

IndDesc natDesc();
IndDesc listDesc();
IndDesc vecDesc();
IndDesc sumDesc();
IndDesc wDesc();
IndDesc idDesc();
IndDesc treeDesc();
void registerBuiltins(DescTable& t);

// Small constructors for the builtins.
Type natTy();
Term natLit(int n);

}  // namespace adaptt

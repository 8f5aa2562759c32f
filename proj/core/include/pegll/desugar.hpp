// This file is part of the pegll project.
// Licensed under the Apache License, Version 2.0 (see LICENSE file)

#pragma once

#include "pegll/grammar.hpp"

namespace pegll {

// Rewrites sugar operators into fresh nonterminals:
//
//   a?    ->  R with R : a / eps
//   a*    ->  R with R : a R / eps
//   a+    ->  P with P : a R ;  R : a R / eps
//   (x)   ->  G with G : x        (as an atom; sugar operands are unwrapped)
//   &x/!x ->  lookahead over a fresh nonterminal unless x already is one
//
// Fresh names are deterministic: <owner-rule>%<ordinal>, '%' being reserved
// (not a legal identifier character). The result is canonical: every rule
// body is an ordered/unordered choice whose alternates are non-empty atom
// sequences or eps; choices appear only at rule top level. Idempotent.
Grammar desugar(const Grammar& g);

// True when `g` already satisfies the canonical post-desugaring shape.
bool is_desugared(const Grammar& g);

}  // namespace pegll

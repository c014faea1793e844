#pragma once

#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <json.hpp>

#include "crys/dieudonne/module.hpp"
#include "crys/exactalg/witt.hpp"
#include "crys/homology/chain_complex.hpp"
#include "crys/homology/fin_ab_group.hpp"
#include "crys/homology/matrix.hpp"
#include "crys/homology/tower.hpp"
#include "crys/specseq/spectral_sequence.hpp"
#include "crys/stackcoh/stack_cohomology.hpp"

namespace crys {

using Json = nlohmann::json;

/// Integers that fit in 64 bits become numbers, larger ones decimal strings.
Json to_json(const Integer &n);
/// {free_rank, torsion: [...]}
Json to_json(const FinAbGroup &g);
/// Row-major array of rows.
Json to_json(const IntMatrix &m);
Json to_json(const SparseIntMatrix &m);

/// Array of coordinate arrays, each coordinate as d residues mod p.
Json to_json(const WittVector &x);
/// Sidecar header {p, d, N, modulus}.
Json witt_header(const WittRing &ring);
/// Inverse of to_json(WittVector) for the given ring; throws invalid_argument.
WittVector witt_from_json(const Json &j, const WittRingPtr &ring);

/// {invariant_factors, exponents, F, V, p, d, N}; invariant_factors are the
/// exponents e with summands W_e.
Json to_json(const DieudonneModule &m);

/// {grading, lo, hi, valid, ranks, differentials}; differentials[k] leaves degree lo + k.
Json to_json(const ChainComplex &c);
/// {"degree": {free_rank, torsion}}
Json homology_report(const std::map<int, FinAbGroup> &groups);

/// {r, entries: {"i,j": group}}
Json to_json(const SpectralSequencePage &page);
Json to_json(const DegenerationCertificate &c);
Json to_json(const SpectralSequenceResult &r);

Json to_json(const Tower &t);
Json to_json(const TowerLimit &l);
Json to_json(const AssertionOutcome &a);
Json to_json(const StackCohomologyResult &r);
Json to_json(const DieudonneComparison &c);

/// (table, degree, group) triples for the CSV projection; degree is free text
/// such as "2" or "1,0".
using GroupRows = std::vector<std::tuple<std::string, std::string, FinAbGroup>>;
void append_rows(GroupRows &rows, const std::string &table, const std::map<int, FinAbGroup> &groups);
/// One row per (degree, invariant factor); free summands appear with factor 0
/// and a trivial group as a single row with an empty factor.
std::string groups_csv(const GroupRows &rows);

/// Deterministic rendering: sorted keys, two-space indent, trailing newline.
std::string dump(const Json &j);

} // namespace crys

#pragma once

#include "bithresh/attractors.hpp"
#include "bithresh/dynamics.hpp"
#include "bithresh/rational.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace bithresh {

// one vertex's trajectory along a periodic orbit, indexed cyclically
using Row = std::vector<std::uint8_t>;

// smallest divisor g of the row length with z(l + g) = z(l) for all l
int row_gamma(const Row& z);

// ascending indices l with z(l) = 1
std::vector<int> support(const Row& z);

struct Part {
    int start = 0;                 // l_k
    int extent = 0;                // q_k; indices are start, start+2, ..., start+2*extent
    std::vector<int> indices;      // in stride order, possibly wrapping
};

struct Partition {
    std::vector<int> c0;           // full stride-2 residue class inside the support, or empty
    std::vector<Part> parts;       // greedy stride-2 runs covering the rest of the support
};

// Stride-2 partition of the support. Only defined for rows with gamma >= 3
// (throws NotApplicableError otherwise). Part starts are scanned in increasing
// cyclic order beginning at scan_offset; the offset changes which part is
// listed first but never the multiset of part types.
Partition build_partition(const Row& z, int scan_offset = 0);

enum class PartType { t00, t01, t10, t11 };

std::string part_type_name(PartType t);  // "00", "01", "10", "11"

struct TypedPartition {
    Partition partition;
    std::vector<PartType> types;   // parallel to partition.parts; c0 is untyped
    int m00 = 0, m01 = 0, m10 = 0, m11 = 0;
};

// Labels each part by the row values immediately left of its start and right
// of its last index.
TypedPartition classify_types(const Row& z, Partition partition);

struct Band {
    bool full_cycle = false;  // no 0-run of length >= 2 exists; members = whole row
    int start = 0;            // first member; a 1 unless full_cycle
    int end = 0;              // last member (cyclically), a 1 unless full_cycle
    std::vector<int> members; // cyclic range start..end
};

// Maximal cyclic segments whose interior 0s are isolated, separated by 0-runs
// of length >= 2. An all-zero row has no bands.
std::vector<Band> bands(const Row& z);

struct BandLemmaResult {
    bool holds = false;
    std::optional<Band> violating_band;  // set when holds is false
};

// Checks, per band, that the typed parts inside it contain either no 01/10
// types at all or exactly one of each. Requires gamma >= 3.
BandLemmaResult check_band_lemma(const Row& z);

// a_ij * sum_l (z_j(l+1) - z_j(l-1)) * z_i(l), indices cyclic
Rat l_operator(const Rat& a_ij, const Row& zi, const Row& zj);

// Psi for row i and component k of its partition (k = 0 addresses c0,
// k = 1..p the parts). a_row_major is the n x n interaction matrix over the
// same index set as rows. The literal and telescoped forms are both exposed;
// psi() evaluates both and throws InternalInconsistencyError if they differ.
Rat psi_literal(const std::vector<Rat>& a_row_major, const std::vector<Row>& rows, int i, int k);
Rat psi_telescoped(const std::vector<Rat>& a_row_major, const std::vector<Row>& rows, int i, int k);
Rat psi(const std::vector<Rat>& a_row_major, const std::vector<Row>& rows, int i, int k);

struct PartReport {
    std::vector<int> indices;
    std::string type;
    Rat psi_value{0};
    Rat bound{0};        // the value psi must stay strictly below
    bool bound_holds = false;
};

struct RowCertificate {
    int row = 0;         // 0-based vertex index
    int gamma = 1;
    bool analyzed = false;  // gamma >= 3
    std::vector<int> c0;
    std::vector<PartReport> parts;
    int m00 = 0, m01 = 0, m10 = 0, m11 = 0;
    bool m01_eq_m10 = false;
    Rat row_l_sum{0};            // sum_j L(z_i, z_j)
    bool decomposition_ok = false;  // row_l_sum equals sum_k psi_ik
    bool row_sum_negative = false;  // required of analyzed rows in the symmetric case
    bool all_bounds_hold = false;
};

struct CertifyReport {
    int n = 0;
    int period = 1;
    bool symmetric = false;
    Rat global_l_sum{0};
    bool global_l_zero = false;
    bool any_gamma3 = false;
    bool all_bounds_hold = true;   // over analyzed rows
    // A symmetric system can never reach a genuine orbit whose rows all pass
    // every bound while some gamma >= 3: seeing that means this library is
    // broken, so the certifier flags it.
    bool contradiction = false;
    std::vector<RowCertificate> rows;
};

// Audits a periodic orbit of ws against the full chain of identities and
// bounds behind the period <= 2 result. The table's columns must form a
// genuine synchronous orbit of ws (checked; invalid-input otherwise).
CertifyReport certify_orbit(const WeightedSystem& ws, const PeriodicTable& table);

std::string certify_report_to_json(const CertifyReport& report);

} // namespace bithresh

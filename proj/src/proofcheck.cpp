#include "bithresh/proofcheck.hpp"

#include "bithresh/errors.hpp"

#include <json.hpp>

#include <algorithm>
#include <stdexcept>

namespace bithresh {

namespace {

int wrap(int l, int T) {
    return ((l % T) + T) % T;
}

} // namespace

int row_gamma(const Row& z) {
    int T = static_cast<int>(z.size());
    if (T < 1) throw std::invalid_argument("row_gamma: empty row");
    for (int d = 1; d < T; ++d) {
        if (T % d != 0) continue;
        bool ok = true;
        for (int l = 0; l < T; ++l) {
            if (z[static_cast<size_t>(wrap(l + d, T))] != z[static_cast<size_t>(l)]) {
                ok = false;
                break;
            }
        }
        if (ok) return d;
    }
    return T;
}

std::vector<int> support(const Row& z) {
    std::vector<int> out;
    for (int l = 0; l < static_cast<int>(z.size()); ++l) {
        if (z[static_cast<size_t>(l)]) out.push_back(l);
    }
    return out;
}

Partition build_partition(const Row& z, int scan_offset) {
    int T = static_cast<int>(z.size());
    int gamma = row_gamma(z);
    if (gamma <= 2) {
        throw NotApplicableError("build_partition: row period gamma = " + std::to_string(gamma) +
                                 " is at most 2, the stride-2 partition is undefined");
    }
    auto at = [&z, T](int l) { return z[static_cast<size_t>(wrap(l, T))]; };
    std::vector<char> used(static_cast<size_t>(T), 0);
    Partition out;

    // c0: the smallest start whose whole stride-2 residue class sits in the
    // support (for odd T that class is everything, so it only exists for the
    // all-ones row, which gamma >= 3 already excludes)
    int class_size = (T % 2 == 0) ? T / 2 : T;
    for (int l0 = 0; l0 < T; ++l0) {
        if (!at(l0)) continue;
        bool full = true;
        int cur = l0;
        for (int s = 0; s < class_size; ++s) {
            if (!at(cur)) {
                full = false;
                break;
            }
            cur = wrap(cur + 2, T);
        }
        if (full) {
            cur = l0;
            for (int s = 0; s < class_size; ++s) {
                out.c0.push_back(cur);
                used[static_cast<size_t>(cur)] = 1;
                cur = wrap(cur + 2, T);
            }
            break;
        }
    }

    // greedy stride-2 runs over whatever support remains, scanning starts in
    // increasing cyclic order from scan_offset
    for (int t = 0; t < T; ++t) {
        int l = wrap(scan_offset + t, T);
        if (!at(l) || used[static_cast<size_t>(l)] || at(l - 2)) continue;
        Part part;
        part.start = l;
        int cur = l;
        int guard = 0;
        while (at(cur) && !used[static_cast<size_t>(cur)]) {
            part.indices.push_back(cur);
            used[static_cast<size_t>(cur)] = 1;
            cur = wrap(cur + 2, T);
            if (++guard > T) {
                throw InternalInconsistencyError("build_partition: runaway stride chain");
            }
        }
        part.extent = static_cast<int>(part.indices.size()) - 1;
        out.parts.push_back(std::move(part));
    }

    for (int l = 0; l < T; ++l) {
        if (static_cast<bool>(used[static_cast<size_t>(l)]) != static_cast<bool>(at(l))) {
            throw InternalInconsistencyError("build_partition: parts do not cover the support");
        }
    }
    return out;
}

std::string part_type_name(PartType t) {
    switch (t) {
        case PartType::t00: return "00";
        case PartType::t01: return "01";
        case PartType::t10: return "10";
        case PartType::t11: return "11";
    }
    return "??";
}

TypedPartition classify_types(const Row& z, Partition partition) {
    int T = static_cast<int>(z.size());
    TypedPartition out;
    out.partition = std::move(partition);
    auto at = [&z, T](int l) { return z[static_cast<size_t>(wrap(l, T))]; };
    for (const Part& p : out.partition.parts) {
        int left = at(p.start - 1);
        int right = at(p.start + 2 * p.extent + 1);
        PartType t = left ? (right ? PartType::t11 : PartType::t10)
                          : (right ? PartType::t01 : PartType::t00);
        out.types.push_back(t);
        switch (t) {
            case PartType::t00: ++out.m00; break;
            case PartType::t01: ++out.m01; break;
            case PartType::t10: ++out.m10; break;
            case PartType::t11: ++out.m11; break;
        }
    }
    return out;
}

std::vector<Band> bands(const Row& z) {
    int T = static_cast<int>(z.size());
    if (T < 1) throw std::invalid_argument("bands: empty row");
    if (std::all_of(z.begin(), z.end(), [](std::uint8_t b) { return b == 0; })) return {};
    auto at = [&z, T](int l) { return z[static_cast<size_t>(wrap(l, T))]; };

    // separators: maximal cyclic 0-runs of length >= 2
    std::vector<std::pair<int, int>> seps;  // (start, length)
    for (int l = 0; l < T; ++l) {
        if (at(l) == 0 && at(l - 1) == 1) {
            int len = 0;
            int cur = l;
            while (at(cur) == 0) {
                ++len;
                cur = wrap(cur + 1, T);
            }
            if (len >= 2) seps.push_back({l, len});
        }
    }

    std::vector<Band> out;
    if (seps.empty()) {
        // only isolated 0s anywhere: the whole cycle is one band with no cut
        Band b;
        b.full_cycle = true;
        b.start = support(z).front();
        b.end = wrap(b.start - 1, T);
        for (int s = 0; s < T; ++s) b.members.push_back(wrap(b.start + s, T));
        out.push_back(std::move(b));
        return out;
    }
    for (size_t k = 0; k < seps.size(); ++k) {
        const auto& [sep_start, sep_len] = seps[k];
        int next_sep_start = seps[(k + 1) % seps.size()].first;
        Band b;
        b.start = wrap(sep_start + sep_len, T);
        b.end = wrap(next_sep_start - 1, T);
        for (int cur = b.start;; cur = wrap(cur + 1, T)) {
            b.members.push_back(cur);
            if (cur == b.end) break;
        }
        out.push_back(std::move(b));
    }
    std::sort(out.begin(), out.end(), [](const Band& a, const Band& b) { return a.start < b.start; });
    return out;
}

BandLemmaResult check_band_lemma(const Row& z) {
    TypedPartition tp = classify_types(z, build_partition(z));
    std::vector<Band> bs = bands(z);
    int T = static_cast<int>(z.size());
    std::vector<int> band_of(static_cast<size_t>(T), -1);
    for (size_t b = 0; b < bs.size(); ++b) {
        for (int m : bs[b].members) band_of[static_cast<size_t>(m)] = static_cast<int>(b);
    }
    auto band_of_indices = [&band_of](const std::vector<int>& indices) {
        int b = band_of[static_cast<size_t>(indices.front())];
        for (int l : indices) {
            if (band_of[static_cast<size_t>(l)] != b) {
                throw InternalInconsistencyError("check_band_lemma: a part crosses a band boundary");
            }
        }
        return b;
    };
    if (!tp.partition.c0.empty()) band_of_indices(tp.partition.c0);

    std::vector<int> count01(bs.size(), 0), count10(bs.size(), 0);
    for (size_t k = 0; k < tp.partition.parts.size(); ++k) {
        int b = band_of_indices(tp.partition.parts[k].indices);
        if (tp.types[k] == PartType::t01) ++count01[static_cast<size_t>(b)];
        if (tp.types[k] == PartType::t10) ++count10[static_cast<size_t>(b)];
    }
    for (size_t b = 0; b < bs.size(); ++b) {
        bool none = count01[b] == 0 && count10[b] == 0;
        bool one_each = count01[b] == 1 && count10[b] == 1;
        if (!none && !one_each) return {false, bs[b]};
    }
    return {true, std::nullopt};
}

Rat l_operator(const Rat& a_ij, const Row& zi, const Row& zj) {
    if (zi.empty() || zi.size() != zj.size()) {
        throw std::invalid_argument("l_operator: rows must share a positive length");
    }
    int T = static_cast<int>(zi.size());
    long long sum = 0;
    for (int l = 0; l < T; ++l) {
        if (zi[static_cast<size_t>(l)]) {
            sum += static_cast<long long>(zj[static_cast<size_t>(wrap(l + 1, T))]) -
                   static_cast<long long>(zj[static_cast<size_t>(wrap(l - 1, T))]);
        }
    }
    return a_ij * Rat(sum);
}

namespace {

void validate_psi_args(const std::vector<Rat>& a, const std::vector<Row>& rows, int i) {
    int n = static_cast<int>(rows.size());
    if (n < 1) throw std::invalid_argument("psi: no rows");
    if (a.size() != static_cast<size_t>(n) * n) {
        throw std::invalid_argument("psi: matrix size does not match the row count");
    }
    if (i < 0 || i >= n) throw std::invalid_argument("psi: row index out of range");
    for (const Row& r : rows) {
        if (r.size() != rows.front().size() || r.empty()) {
            throw std::invalid_argument("psi: rows must share a positive length");
        }
    }
}

// sum_j a_ij z_j(l)
Rat weighted_column(const std::vector<Rat>& a, const std::vector<Row>& rows, int i, int l) {
    int n = static_cast<int>(rows.size());
    int T = static_cast<int>(rows.front().size());
    int lw = wrap(l, T);
    Rat s(0);
    for (int j = 0; j < n; ++j) {
        if (rows[static_cast<size_t>(j)][static_cast<size_t>(lw)]) {
            s += a[static_cast<size_t>(i) * n + j];
        }
    }
    return s;
}

const std::vector<int>& partition_component(const Partition& part, int k) {
    if (k == 0) return part.c0;
    if (k < 0 || static_cast<size_t>(k) > part.parts.size()) {
        throw std::invalid_argument("psi: component index out of range");
    }
    return part.parts[static_cast<size_t>(k - 1)].indices;
}

} // namespace

Rat psi_literal(const std::vector<Rat>& a_row_major, const std::vector<Row>& rows, int i, int k) {
    validate_psi_args(a_row_major, rows, i);
    Partition part = build_partition(rows[static_cast<size_t>(i)]);
    Rat s(0);
    for (int l : partition_component(part, k)) {
        s += weighted_column(a_row_major, rows, i, l + 1) -
             weighted_column(a_row_major, rows, i, l - 1);
    }
    return s;
}

Rat psi_telescoped(const std::vector<Rat>& a_row_major, const std::vector<Row>& rows, int i, int k) {
    validate_psi_args(a_row_major, rows, i);
    Partition part = build_partition(rows[static_cast<size_t>(i)]);
    if (k == 0) {
        // the stride-2 class is cyclic, so its telescope closes up to zero
        partition_component(part, 0);
        return Rat(0);
    }
    partition_component(part, k);
    const Part& p = part.parts[static_cast<size_t>(k - 1)];
    return weighted_column(a_row_major, rows, i, p.start + 2 * p.extent + 1) -
           weighted_column(a_row_major, rows, i, p.start - 1);
}

Rat psi(const std::vector<Rat>& a_row_major, const std::vector<Row>& rows, int i, int k) {
    Rat literal = psi_literal(a_row_major, rows, i, k);
    Rat telescoped = psi_telescoped(a_row_major, rows, i, k);
    if (literal != telescoped) {
        throw InternalInconsistencyError("psi: literal and telescoped forms disagree (" +
                                         rat_to_string(literal) + " vs " +
                                         rat_to_string(telescoped) + ")");
    }
    return literal;
}

CertifyReport certify_orbit(const WeightedSystem& ws, const PeriodicTable& table) {
    int n = ws.size();
    int T = table.period;
    if (static_cast<int>(table.rows.size()) != n) {
        throw std::invalid_argument("certify_orbit: table row count differs from the system size");
    }
    if (T < 1 || static_cast<int>(table.columns.size()) != T) {
        throw std::invalid_argument("certify_orbit: malformed table");
    }
    for (int l = 0; l < T; ++l) {
        if (ws.step(table.columns[static_cast<size_t>(l)]) !=
            table.columns[static_cast<size_t>((l + 1) % T)]) {
            throw std::invalid_argument("certify_orbit: columns are not a synchronous orbit of this system");
        }
    }
    {
        std::vector<StateCode> sorted_cols = table.columns;
        std::sort(sorted_cols.begin(), sorted_cols.end());
        if (std::adjacent_find(sorted_cols.begin(), sorted_cols.end()) != sorted_cols.end()) {
            throw std::invalid_argument("certify_orbit: repeated column, the period is not minimal");
        }
    }

    std::vector<Rat> a(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) a[static_cast<size_t>(i) * n + j] = ws.a(i, j);
    }

    CertifyReport report;
    report.n = n;
    report.period = T;
    report.symmetric = ws.symmetric();

    std::vector<std::vector<Rat>> l_matrix(static_cast<size_t>(n),
                                           std::vector<Rat>(static_cast<size_t>(n), Rat(0)));
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            l_matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] =
                l_operator(ws.a(i, j), table.rows[static_cast<size_t>(i)],
                           table.rows[static_cast<size_t>(j)]);
            report.global_l_sum += l_matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
    }
    report.global_l_zero = report.global_l_sum == Rat(0);

    for (int i = 0; i < n; ++i) {
        const Row& z = table.rows[static_cast<size_t>(i)];
        RowCertificate rc;
        rc.row = i;
        rc.gamma = row_gamma(z);
        for (int j = 0; j < n; ++j) {
            rc.row_l_sum += l_matrix[static_cast<size_t>(i)][static_cast<size_t>(j)];
        }
        if (rc.gamma <= 2) {
            // every single L(z_i, .) vanishes here, independent of the matrix
            for (int j = 0; j < n; ++j) {
                if (l_matrix[static_cast<size_t>(i)][static_cast<size_t>(j)] != Rat(0)) {
                    throw InternalInconsistencyError(
                        "certify_orbit: nonzero L from a row of period at most 2");
                }
            }
            report.rows.push_back(std::move(rc));
            continue;
        }
        rc.analyzed = true;
        report.any_gamma3 = true;
        TypedPartition tp = classify_types(z, build_partition(z));
        rc.c0 = tp.partition.c0;
        rc.m00 = tp.m00;
        rc.m01 = tp.m01;
        rc.m10 = tp.m10;
        rc.m11 = tp.m11;
        rc.m01_eq_m10 = tp.m01 == tp.m10;
        if (!rc.m01_eq_m10) {
            throw InternalInconsistencyError("certify_orbit: a row has unbalanced 01/10 part counts");
        }
        Rat psi_total = psi(a, table.rows, i, 0);
        if (psi_total != Rat(0)) {
            throw InternalInconsistencyError("certify_orbit: the stride-2 class has nonzero psi");
        }
        rc.all_bounds_hold = true;
        for (size_t k = 0; k < tp.partition.parts.size(); ++k) {
            PartReport pr;
            pr.indices = tp.partition.parts[k].indices;
            pr.type = part_type_name(tp.types[k]);
            pr.psi_value = psi(a, table.rows, i, static_cast<int>(k) + 1);
            switch (tp.types[k]) {
                case PartType::t00:
                case PartType::t11: pr.bound = Rat(0); break;
                case PartType::t10: pr.bound = ws.kup(i) - ws.kdown(i); break;
                case PartType::t01: pr.bound = ws.kdown(i) - ws.kup(i); break;
            }
            pr.bound_holds = pr.psi_value < pr.bound;
            rc.all_bounds_hold = rc.all_bounds_hold && pr.bound_holds;
            psi_total += pr.psi_value;
            rc.parts.push_back(std::move(pr));
        }
        rc.decomposition_ok = psi_total == rc.row_l_sum;
        if (!rc.decomposition_ok) {
            throw InternalInconsistencyError(
                "certify_orbit: psi components do not sum to the row's L total");
        }
        rc.row_sum_negative = rc.row_l_sum < Rat(0);
        report.all_bounds_hold = report.all_bounds_hold && rc.all_bounds_hold;
        report.rows.push_back(std::move(rc));
    }
    report.contradiction = report.symmetric && report.any_gamma3 && report.all_bounds_hold;
    return report;
}

std::string certify_report_to_json(const CertifyReport& report) {
    nlohmann::json j;
    j["n"] = report.n;
    j["period"] = report.period;
    j["symmetric"] = report.symmetric;
    j["global_l_sum"] = rat_to_string(report.global_l_sum);
    j["global_l_zero"] = report.global_l_zero;
    j["any_gamma_ge_3"] = report.any_gamma3;
    j["all_bounds_hold"] = report.all_bounds_hold;
    j["contradiction"] = report.contradiction;
    j["rows"] = nlohmann::json::array();
    for (const RowCertificate& rc : report.rows) {
        nlohmann::json r;
        r["vertex"] = rc.row + 1;
        r["gamma"] = rc.gamma;
        r["analyzed"] = rc.analyzed;
        r["l_row_sum"] = rat_to_string(rc.row_l_sum);
        if (rc.analyzed) {
            r["c0"] = rc.c0;
            r["type_counts"] = {{"00", rc.m00}, {"01", rc.m01}, {"10", rc.m10}, {"11", rc.m11}};
            r["m01_eq_m10"] = rc.m01_eq_m10;
            r["decomposition_ok"] = rc.decomposition_ok;
            r["l_row_sum_negative"] = rc.row_sum_negative;
            r["all_bounds_hold"] = rc.all_bounds_hold;
            r["parts"] = nlohmann::json::array();
            for (const PartReport& pr : rc.parts) {
                r["parts"].push_back({{"indices", pr.indices},
                                      {"type", pr.type},
                                      {"psi", rat_to_string(pr.psi_value)},
                                      {"bound", rat_to_string(pr.bound)},
                                      {"bound_holds", pr.bound_holds}});
            }
        }
        j["rows"].push_back(std::move(r));
    }
    return j.dump(2);
}

} // namespace bithresh

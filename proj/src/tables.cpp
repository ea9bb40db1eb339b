#include "moduli/tables.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace moduli {

namespace {

i64 mod4(i64 x) { return ((x % 4) + 4) % 4; }

i64 squarefree_kernel(i64 n) {
    i64 k = 1;
    for (i64 p = 2; p * p <= n; ++p) {
        if (n % p) continue;
        int e = 0;
        while (n % p == 0) { n /= p; ++e; }
        if (e % 2) k *= p;
    }
    return k * n;
}

std::string serialize_rows(const ExternalTable& t) {
    std::ostringstream os;
    for (const auto& r : t.rows) os << r.delta << "\t" << r.h << "\t" << r.field << "\n";
    return os.str();
}

}  // namespace

std::set<i64> genus_field_fingerprint(i64 delta) {
    std::set<i64> out;
    const i64 n = -delta;
    for (i64 d = 1; d * d <= n; ++d) {
        if (n % d) continue;
        for (i64 pos : {d, n / d}) {
            i64 neg = delta / pos;  // negative cofactor
            if (mod4(pos) > 1 || mod4(neg) > 1) continue;
            i64 k = squarefree_kernel(pos);
            if (k > 1) out.insert(k);
        }
    }
    return out;
}

std::string field_label(const std::set<i64>& fp) {
    if (fp.empty()) return "Q";
    std::string s = "Q(";
    bool first = true;
    for (i64 k : fp) {
        if (!first) s += ",";
        s += "s" + std::to_string(k);
        first = false;
    }
    return s + ")";
}

std::uint64_t fnv1a64(const std::string& bytes) {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

ExternalTable build_table_2_1(const ClassNumberScan& scan, i64 search_cap) {
    if (search_cap > scan.cap) search_cap = scan.cap;
    ExternalTable t;
    t.source_id = "table-2.1";
    for (i64 n = 3; n <= search_cap; ++n) {
        const i64 delta = -n;
        if (!is_valid_discriminant(delta) || scan.h[n] == 0) continue;
        if (scan.h[n] != scan.ambiguous[n]) continue;
        t.rows.push_back({delta, static_cast<i64>(scan.h[n]),
                          field_label(genus_field_fingerprint(delta))});
    }
    t.checksum = fnv1a64(serialize_rows(t));
    return t;
}

ExternalTable build_table_4_1(const ExternalTable& t21) {
    // group by (h, field); keep fields seen with >= 2 fundamental discriminants
    std::map<std::pair<i64, std::string>, std::vector<i64>> groups;
    for (const auto& r : t21.rows) groups[{r.h, r.field}].push_back(r.delta);
    ExternalTable t;
    t.source_id = "table-4.1";
    for (const auto& [key, discs] : groups) {
        std::set<i64> fundamentals;
        for (i64 d : discs) fundamentals.insert(fundamental_decomposition(d).fundamental);
        if (fundamentals.size() < 2) continue;
        for (i64 d : discs) t.rows.push_back({d, key.first, key.second});
    }
    std::sort(t.rows.begin(), t.rows.end(), [](const TableRow& a, const TableRow& b) {
        return std::tie(a.h, a.field, a.delta) < std::tie(b.h, b.field, b.delta);
    });
    t.checksum = fnv1a64(serialize_rows(t));
    return t;
}

std::vector<HMaximaRow> build_h_maxima(const ClassNumberScan& scan, i64 max_h) {
    std::vector<HMaximaRow> rows;
    for (i64 h = 1; h <= max_h; ++h) rows.push_back({h, scan.max_abs_with_class_number(h)});
    return rows;
}

void save_table(const ExternalTable& t, const std::string& path) {
    std::ofstream out(path);
    out << "# source=" << t.source_id << " fnv1a64=" << std::hex << t.checksum << std::dec
        << "\n";
    out << serialize_rows(t);
}

ExternalTable load_table(const std::string& path, const std::string& expected_source) {
    std::ifstream in(path);
    if (!in) throw data_error("missing data file: " + path);
    std::string header;
    std::getline(in, header);
    std::string source;
    std::uint64_t checksum = 0;
    {
        std::istringstream hs(header);
        std::string tag, kv;
        hs >> tag;
        while (hs >> kv) {
            auto eq = kv.find('=');
            if (eq == std::string::npos) continue;
            auto key = kv.substr(0, eq), val = kv.substr(eq + 1);
            if (key == "source") source = val;
            if (key == "fnv1a64") checksum = std::stoull(val, nullptr, 16);
        }
    }
    if (source != expected_source)
        throw data_error(path + ": expected source " + expected_source + ", found " + source);
    ExternalTable t;
    t.source_id = source;
    std::string line, body;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        body += line + "\n";
        std::istringstream ls(line);
        TableRow r;
        if (!(ls >> r.delta >> r.h >> r.field)) throw data_error(path + ": bad row: " + line);
        t.rows.push_back(r);
    }
    t.checksum = fnv1a64(body);
    if (t.checksum != checksum)
        throw data_error(path + ": checksum mismatch (file corrupt or edited)");
    return t;
}

void save_h_maxima(const std::vector<HMaximaRow>& rows, i64 scan_cap, const std::string& path) {
    std::ofstream out(path);
    out << "# h-maxima scan_cap=" << scan_cap << "\n";
    for (const auto& r : rows) out << r.h << "\t" << r.max_abs_delta << "\n";
}

std::vector<HMaximaRow> load_h_maxima(const std::string& path, i64* scan_cap) {
    std::ifstream in(path);
    if (!in) throw data_error("missing data file: " + path);
    std::string header;
    std::getline(in, header);
    if (scan_cap) {
        auto pos = header.find("scan_cap=");
        *scan_cap = pos == std::string::npos ? 0 : std::stoll(header.substr(pos + 9));
    }
    std::vector<HMaximaRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        HMaximaRow r;
        if (!(ls >> r.h >> r.max_abs_delta)) throw data_error(path + ": bad row: " + line);
        rows.push_back(r);
    }
    return rows;
}

void validate_table_2_1(const ExternalTable& t, const ClassNumberScan& scan) {
    std::set<i64> listed;
    for (const auto& r : t.rows) {
        if (!is_valid_discriminant(r.delta)) throw data_error("table-2.1: invalid discriminant");
        if (scan.class_number(r.delta) != r.h)
            throw data_error("table-2.1: wrong class number for " + std::to_string(r.delta));
        if (!scan.two_elementary(r.delta))
            throw data_error("table-2.1: " + std::to_string(r.delta) + " is not 2-elementary");
        auto fp = genus_field_fingerprint(r.delta);
        if (field_label(fp) != r.field)
            throw data_error("table-2.1: field mismatch for " + std::to_string(r.delta));
        // a (Z/2)^n field of degree h has exactly h-1 quadratic subfields
        if (static_cast<i64>(fp.size()) != r.h - 1)
            throw data_error("table-2.1: fingerprint size inconsistent for " +
                             std::to_string(r.delta));
        listed.insert(r.delta);
    }
    // completeness within the scan range
    for (i64 n = 3; n <= scan.cap; ++n)
        if (scan.h[n] > 0 && scan.h[n] == scan.ambiguous[n] && !listed.count(-n))
            throw data_error("table-2.1: missing 2-elementary discriminant " +
                             std::to_string(-n));
}

void validate_table_4_1(const ExternalTable& t41, const ExternalTable& t21) {
    std::set<i64> in21;
    for (const auto& r : t21.rows) in21.insert(r.delta);
    std::map<std::pair<i64, std::string>, std::set<i64>> fundamentals;
    for (const auto& r : t41.rows) {
        if (!in21.count(r.delta))
            throw data_error("table-4.1: " + std::to_string(r.delta) + " not in table-2.1");
        if (field_label(genus_field_fingerprint(r.delta)) != r.field)
            throw data_error("table-4.1: field mismatch for " + std::to_string(r.delta));
        fundamentals[{r.h, r.field}].insert(fundamental_decomposition(r.delta).fundamental);
    }
    for (const auto& [key, fs] : fundamentals)
        if (fs.size() < 2)
            throw data_error("table-4.1: field " + key.second +
                             " lacks two distinct fundamental discriminants");
}

}  // namespace moduli

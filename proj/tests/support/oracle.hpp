// Brute-force reference for the affinity formulas, written against the published
// definitions before the library and kept independent of it: tallies live in
// string-keyed maps, every value is evaluated by direct substitution, and the
// iterative diagonal runs its own loop to stationarity. Test-only code.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

struct Record {
    std::string id;
    int year = 0;
    std::vector<std::string> countries;  // assumed already canonical
    int author_count = 1;
};

struct Tallies {
    std::set<std::string> countries;                          // every country seen
    std::map<std::pair<std::string, std::string>, long> pair_links;  // unordered, key sorted
    std::map<std::string, long> total_papers;
    std::map<std::string, long> intl_papers;
    std::map<std::string, long> intra_papers;
    long n_all = 0;  // papers with >= 2 countries
};

inline Tallies tally(const std::vector<Record>& corpus) {
    Tallies t;
    for (const auto& rec : corpus) {
        std::set<std::string> cs(rec.countries.begin(), rec.countries.end());
        for (const auto& c : cs) {
            t.countries.insert(c);
            t.total_papers[c] += 1;
        }
        if (cs.size() >= 2) {
            t.n_all += 1;
            for (const auto& c : cs) t.intl_papers[c] += 1;
            for (auto i = cs.begin(); i != cs.end(); ++i)
                for (auto j = std::next(i); j != cs.end(); ++j)
                    t.pair_links[{*i, *j}] += 1;
        } else if (cs.size() == 1 && rec.author_count >= 2) {
            t.intra_papers[*cs.begin()] += 1;
        }
    }
    return t;
}

inline double links(const Tallies& t, const std::string& a, const std::string& b) {
    if (a == b) return 0.0;
    auto key = a < b ? std::make_pair(a, b) : std::make_pair(b, a);
    auto it = t.pair_links.find(key);
    return it == t.pair_links.end() ? 0.0 : static_cast<double>(it->second);
}

inline long lookup(const std::map<std::string, long>& m, const std::string& c) {
    auto it = m.find(c);
    return it == m.end() ? 0 : it->second;
}

// A full named-cell matrix: diagonal entries explicit, everything else from pair links.
using DiagMap = std::map<std::string, double>;

inline double cell(const Tallies& t, const DiagMap& diag, const std::string& a,
                   const std::string& b) {
    if (a == b) {
        auto it = diag.find(a);
        return it == diag.end() ? 0.0 : it->second;
    }
    return links(t, a, b);
}

inline double row_sum(const Tallies& t, const DiagMap& diag, const std::string& a) {
    double s = 0;
    for (const auto& c : t.countries) s += cell(t, diag, a, c);
    return s;
}

inline double grand_total(const Tallies& t, const DiagMap& diag) {
    double s = 0;
    for (const auto& c : t.countries) s += row_sum(t, diag, c);
    return s;
}

inline DiagMap zero_diagonal(const Tallies& t) {
    DiagMap d;
    for (const auto& c : t.countries) d[c] = 0.0;
    return d;
}

inline DiagMap diagonal_from(const Tallies& t, const std::map<std::string, long>& source) {
    DiagMap d;
    for (const auto& c : t.countries) d[c] = static_cast<double>(lookup(source, c));
    return d;
}

// Iterate n(i,i) <- (row sum)^2 / total, all rows from the previous sweep, until
// the diagonal stops changing bitwise.
inline DiagMap iterated_diagonal(const Tallies& t, long max_sweeps = 100000) {
    DiagMap d = zero_diagonal(t);
    for (long sweep = 0; sweep < max_sweeps; ++sweep) {
        double total = grand_total(t, d);
        DiagMap next;
        bool changed = false;
        for (const auto& c : t.countries) {
            double m = row_sum(t, d, c);
            double v = (total > 0 && m > 0) ? m * m / total : 0.0;
            next[c] = v;
            if (v != d[c]) changed = true;
        }
        d = std::move(next);
        if (!changed) break;
    }
    return d;
}

constexpr double none = std::numeric_limits<double>::quiet_NaN();
inline bool defined(double v) { return !std::isnan(v); }

// M1(i,j) = n_all * n_ij / (n_i * n_j), paper-level counts, zero diagonal.
inline double m1(const Tallies& t, const std::string& i, const std::string& j) {
    double ni = static_cast<double>(lookup(t.intl_papers, i));
    double nj = static_cast<double>(lookup(t.intl_papers, j));
    if (ni == 0 || nj == 0) return none;
    if (i == j) return 0.0;
    return static_cast<double>(t.n_all) * links(t, i, j) / (ni * nj);
}

// Mr(i,j) = n(..) * n_ij / (sum_k n(i,k) * sum_k n(j,k)) with the chosen diagonal.
inline double overlapping(const Tallies& t, const DiagMap& diag, const std::string& i,
                          const std::string& j) {
    double mi = row_sum(t, diag, i), mj = row_sum(t, diag, j);
    if (mi == 0 || mj == 0) return none;
    return grand_total(t, diag) * cell(t, diag, i, j) / (mi * mj);
}

// M7(i,j) = n_ij * (n(..) - sum_k n_ik) / (sum_k n_ik * sum_k n_jk), zero diagonal.
inline double m7(const Tallies& t, const std::string& i, const std::string& j) {
    DiagMap zd = zero_diagonal(t);
    double mi = row_sum(t, zd, i), mj = row_sum(t, zd, j);
    if (mi == 0 || mj == 0) return none;
    return cell(t, zd, i, j) * (grand_total(t, zd) - mi) / (mi * mj);
}

inline double npai_power(double v) { return defined(v) ? (v * v - 1) / (v * v + 1) : none; }
inline double npai_linear(double v) { return defined(v) ? (v - 1) / (v + 1) : none; }

// AFI(target, j) = n_{target,j} / sum_k n_{target,k}, links only.
inline double afi(const Tallies& t, const std::string& target, const std::string& j) {
    DiagMap zd = zero_diagonal(t);
    double m = row_sum(t, zd, target);
    if (m == 0 || target == j) return none;
    return links(t, target, j) / m;
}

// r_ij = n_ij / sqrt(n_i * n_j) with n_i the country's total paper count.
inline double salton(const Tallies& t, const std::string& i, const std::string& j) {
    if (i == j) return none;
    double ni = static_cast<double>(lookup(t.total_papers, i));
    double nj = static_cast<double>(lookup(t.total_papers, j));
    if (ni == 0 || nj == 0) return none;
    return links(t, i, j) / std::sqrt(ni * nj);
}

// Plain two-pass product-moment correlation, no shortcuts shared with the library.
inline std::optional<double> pearson_ref(const std::vector<double>& x,
                                         const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 3) return std::nullopt;
    double mx = 0, my = 0;
    for (std::size_t k = 0; k < x.size(); ++k) { mx += x[k]; my += y[k]; }
    mx /= static_cast<double>(x.size());
    my /= static_cast<double>(x.size());
    double sxy = 0, sxx = 0, syy = 0;
    for (std::size_t k = 0; k < x.size(); ++k) {
        sxy += (x[k] - mx) * (y[k] - my);
        sxx += (x[k] - mx) * (x[k] - mx);
        syy += (y[k] - my) * (y[k] - my);
    }
    if (sxx == 0 || syy == 0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

inline std::vector<double> ranks_ref(const std::vector<double>& v) {
    std::vector<double> r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        std::size_t below = 0, equal = 0;
        for (std::size_t j = 0; j < v.size(); ++j) {
            if (v[j] < v[i]) ++below;
            if (v[j] == v[i]) ++equal;
        }
        r[i] = static_cast<double>(below) + (static_cast<double>(equal) + 1.0) / 2.0;
    }
    return r;
}

inline std::optional<double> spearman_ref(const std::vector<double>& x,
                                          const std::vector<double>& y) {
    return pearson_ref(ranks_ref(x), ranks_ref(y));
}

}  // namespace oracle

#include "gcx/linalg.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace gcx {

std::string Field::tag() const { return kind == Kind::rational ? "Q" : "Fp:" + std::to_string(p); }

namespace {

bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

}  // namespace

Field parse_field(const std::string& s) {
    if (s == "Q" || s == "QQ") return Field::Q();
    std::string num = s.rfind("Fp:", 0) == 0 ? s.substr(3) : s;
    std::uint64_t p = 0;
    try {
        std::size_t used = 0;
        p = std::stoull(num, &used);
        if (used != num.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
        throw std::invalid_argument("bad field '" + s + "' (expected Q or Fp:<prime>)");
    }
    if (!is_prime(p) || p >= (1ull << 31)) throw std::invalid_argument("field characteristic must be a prime < 2^31");
    return Field::Fp(static_cast<std::uint32_t>(p));
}

SparseMatrix::SparseMatrix(int rows, int cols, Field f) : rows_(rows), cols_(cols), field_(f) {}

void SparseMatrix::add(int row, int col, const mpq_class& v) {
    if (row < 0 || row >= rows_ || col < 0 || col >= cols_) throw std::out_of_range("matrix index out of range");
    entries_.push_back({row, col, v});
}

void SparseMatrix::finalize() {
    std::sort(entries_.begin(), entries_.end(),
              [](const Triplet& a, const Triplet& b) { return std::tie(a.col, a.row) < std::tie(b.col, b.row); });
    std::vector<Triplet> out;
    for (auto& t : entries_) {
        if (!out.empty() && out.back().row == t.row && out.back().col == t.col) out.back().value += t.value;
        else out.push_back(std::move(t));
    }
    if (field_.kind == Field::Kind::prime) {
        const mpz_class p = field_.p;
        for (auto& t : out) {
            mpz_class v = t.value.get_num() % p;
            if (v < 0) v += p;
            t.value = v;
        }
    }
    out.erase(std::remove_if(out.begin(), out.end(), [](const Triplet& t) { return t.value == 0; }), out.end());
    entries_ = std::move(out);
}

SparseMatrix SparseMatrix::to_field(const Field& f) const {
    if (f == field_) return *this;
    if (field_.kind != Field::Kind::rational) throw FieldError("can only reduce rational matrices");
    SparseMatrix m(rows_, cols_, f);
    if (f.kind == Field::Kind::rational) return *this;
    const mpz_class p = f.p;
    for (const auto& t : entries_) {
        mpz_class num = t.value.get_num() % p, den = t.value.get_den() % p;
        if (den == 0) throw FieldError("characteristic " + std::to_string(f.p) + " divides a denominator");
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), p.get_mpz_t());
        mpz_class v = (num * inv) % p;
        if (v < 0) v += p;
        m.entries_.push_back({t.row, t.col, mpq_class(v)});
    }
    m.finalize();
    return m;
}

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.cols() != b.rows()) throw std::invalid_argument("dimension mismatch in multiply");
    if (!(a.field() == b.field())) throw std::invalid_argument("field mismatch in multiply");
    std::vector<std::vector<const Triplet*>> acols(a.cols());
    for (const auto& t : a.entries()) acols[t.col].push_back(&t);
    SparseMatrix c(a.rows(), b.cols(), a.field());
    for (const auto& tb : b.entries())
        for (const Triplet* ta : acols[tb.row]) c.add(ta->row, tb.col, ta->value * tb.value);
    c.finalize();
    return c;
}

SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("row mismatch in hstack");
    SparseMatrix c(a.rows(), a.cols() + b.cols(), a.field());
    for (const auto& t : a.entries()) c.add(t.row, t.col, t.value);
    for (const auto& t : b.entries()) c.add(t.row, a.cols() + t.col, t.value);
    c.finalize();
    return c;
}

SparseMatrix transpose(const SparseMatrix& a) {
    SparseMatrix c(a.cols(), a.rows(), a.field());
    for (const auto& t : a.entries()) c.add(t.col, t.row, t.value);
    c.finalize();
    return c;
}

SparseMatrix subtract(const SparseMatrix& a, const SparseMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw std::invalid_argument("shape mismatch in subtract");
    SparseMatrix c(a.rows(), a.cols(), a.field());
    for (const auto& t : a.entries()) c.add(t.row, t.col, t.value);
    for (const auto& t : b.entries()) c.add(t.row, t.col, -t.value);
    c.finalize();
    return c;
}

namespace {

struct ModP {
    using T = std::uint32_t;
    std::uint64_t p;
    T add(T a, T b) const { return static_cast<T>((a + static_cast<std::uint64_t>(b)) % p); }
    T sub(T a, T b) const { return static_cast<T>((a + p - b) % p); }
    T mul(T a, T b) const { return static_cast<T>(static_cast<std::uint64_t>(a) * b % p); }
    T inv(T a) const {
        std::uint64_t r = 1, b = a, e = p - 2;
        while (e) {
            if (e & 1) r = r * b % p;
            b = b * b % p;
            e >>= 1;
        }
        return static_cast<T>(r);
    }
    bool zero(T a) const { return a == 0; }
    T from(const mpq_class& q) const { return static_cast<T>(q.get_num().get_ui()); }
};

struct Rat {
    using T = mpq_class;
    T add(const T& a, const T& b) const { return a + b; }
    T sub(const T& a, const T& b) const { return a - b; }
    T mul(const T& a, const T& b) const { return a * b; }
    T inv(const T& a) const { return 1 / a; }
    bool zero(const T& a) const { return a == 0; }
    T from(const mpq_class& q) const { return q; }
};

// Sparse elimination on rows. Pivot choice: the shortest active row, and in
// it the column with the fewest active rows (Markowitz cost).
template <class F>
int sparse_rank(const SparseMatrix& m, const F& f) {
    using T = typename F::T;
    using Row = std::vector<std::pair<int, T>>;
    std::vector<Row> rows(m.rows());
    for (const auto& t : m.entries()) rows[t.row].emplace_back(t.col, f.from(t.value));
    for (auto& r : rows) std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });

    std::vector<std::vector<int>> col_rows(m.cols());
    std::vector<int> col_count(m.cols(), 0);
    std::set<std::pair<std::size_t, int>> active;
    for (int i = 0; i < m.rows(); ++i) {
        if (rows[i].empty()) continue;
        active.emplace(rows[i].size(), i);
        for (const auto& [c, v] : rows[i]) {
            col_rows[c].push_back(i);
            ++col_count[c];
        }
    }
    std::vector<char> alive(m.rows(), 1);
    int rank = 0;
    Row tmp;
    while (!active.empty()) {
        auto [len, pr] = *active.begin();
        active.erase(active.begin());
        alive[pr] = 0;
        Row pivot_row = std::move(rows[pr]);
        rows[pr].clear();
        for (const auto& [c, v] : pivot_row) --col_count[c];
        if (pivot_row.empty()) continue;
        std::size_t best = 0;
        for (std::size_t i = 1; i < pivot_row.size(); ++i)
            if (col_count[pivot_row[i].first] < col_count[pivot_row[best].first]) best = i;
        const int pc = pivot_row[best].first;
        const T pinv = f.inv(pivot_row[best].second);
        ++rank;

        std::vector<int> targets;
        for (int r : col_rows[pc])
            if (alive[r]) targets.push_back(r);
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        col_rows[pc].clear();
        for (int r : targets) {
            Row& row = rows[r];
            auto it = std::lower_bound(row.begin(), row.end(), pc, [](const auto& a, int c) { return a.first < c; });
            if (it == row.end() || it->first != pc) continue;
            const T factor = f.mul(it->second, pinv);
            active.erase({row.size(), r});
            for (const auto& [c, v] : row) --col_count[c];
            tmp.clear();
            std::size_t i = 0, j = 0;
            while (i < row.size() || j < pivot_row.size()) {
                if (j == pivot_row.size() || (i < row.size() && row[i].first < pivot_row[j].first)) {
                    tmp.push_back(std::move(row[i++]));
                } else if (i == row.size() || pivot_row[j].first < row[i].first) {
                    T v = f.sub(T(0), f.mul(factor, pivot_row[j].second));
                    if (!f.zero(v)) {
                        tmp.emplace_back(pivot_row[j].first, v);
                        col_rows[pivot_row[j].first].push_back(r);
                    }
                    ++j;
                } else {
                    T v = f.sub(row[i].second, f.mul(factor, pivot_row[j].second));
                    if (!f.zero(v)) tmp.emplace_back(row[i].first, std::move(v));
                    ++i;
                    ++j;
                }
            }
            row.swap(tmp);
            for (const auto& [c, v] : row) ++col_count[c];
            if (row.empty()) alive[r] = 0;
            else active.emplace(row.size(), r);
        }
    }
    return rank;
}

int dense_rank_modp(const SparseMatrix& m, std::uint32_t p) {
    const int R = m.rows(), C = m.cols();
    std::vector<std::vector<std::uint64_t>> a(R, std::vector<std::uint64_t>(C, 0));
    for (const auto& t : m.entries()) a[t.row][t.col] = t.value.get_num().get_ui();
    ModP f{p};
    int rank = 0;
    for (int c = 0; c < C && rank < R; ++c) {
        int piv = -1;
        for (int r = rank; r < R; ++r)
            if (a[r][c] != 0) {
                piv = r;
                break;
            }
        if (piv < 0) continue;
        std::swap(a[piv], a[rank]);
        const std::uint64_t inv = f.inv(static_cast<std::uint32_t>(a[rank][c]));
        for (int r = rank + 1; r < R; ++r) {
            if (a[r][c] == 0) continue;
            const std::uint64_t factor = a[r][c] * inv % p;
            for (int k = c; k < C; ++k) {
                if (a[rank][k] == 0) continue;
                a[r][k] = (a[r][k] + p - factor * a[rank][k] % p) % p;
            }
        }
        ++rank;
    }
    return rank;
}

}  // namespace

int rank(const SparseMatrix& m) {
    if (m.is_zero()) return 0;
    if (m.field().kind == Field::Kind::rational) return sparse_rank(m, Rat{});
    if (static_cast<long long>(m.rows()) * m.cols() <= 500LL * 500LL) return dense_rank_modp(m, m.field().p);
    return sparse_rank(m, ModP{m.field().p});
}

int rank_over(const SparseMatrix& m, const Field& f) { return rank(m.to_field(f)); }

std::string serialize_matrix(const SparseMatrix& m) {
    std::ostringstream os;
    os << "#rows=" << m.rows() << ";cols=" << m.cols() << ";field=" << m.field().tag() << "\n";
    for (const auto& t : m.entries()) os << t.row << " " << t.col << " " << t.value.get_str() << "\n";
    return os.str();
}

SparseMatrix parse_matrix(const std::string& text) {
    std::istringstream is(text);
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty matrix file");
    int rows = 0, cols = 0;
    char fieldbuf[64] = {0};
    if (std::sscanf(header.c_str(), "#rows=%d;cols=%d;field=%63s", &rows, &cols, fieldbuf) != 3)
        throw std::runtime_error("bad matrix header: " + header);
    SparseMatrix m(rows, cols, parse_field(fieldbuf));
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        int r, c;
        std::string v;
        if (!(ls >> r >> c >> v)) throw std::runtime_error("bad matrix line: " + line);
        mpq_class q(v);
        q.canonicalize();
        m.add(r, c, q);
    }
    m.finalize();
    return m;
}

}  // namespace gcx

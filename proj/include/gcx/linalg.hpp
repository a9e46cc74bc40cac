#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace gcx {

struct Field {
    enum class Kind { rational, prime };
    Kind kind = Kind::prime;
    std::uint32_t p = 32003;

    static Field Q() { return {Kind::rational, 0}; }
    static Field Fp(std::uint32_t p) { return {Kind::prime, p}; }

    std::string tag() const;  // "Q" or "Fp:<p>"
    friend bool operator==(const Field&, const Field&) = default;
};

Field parse_field(const std::string& s);  // "Q", "Fp:<p>" or a bare prime

class FieldError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Triplet {
    int row;
    int col;
    mpq_class value;
};

// Coordinate matrix; values are exact rationals for Q and canonical residues
// in [0, p) for GF(p).
class SparseMatrix {
public:
    SparseMatrix() = default;
    SparseMatrix(int rows, int cols, Field f = Field::Q());

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    const Field& field() const { return field_; }
    const std::vector<Triplet>& entries() const { return entries_; }
    std::size_t nnz() const { return entries_.size(); }

    // Accumulates; finalize() sorts by (col, row), merges and drops zeros.
    void add(int row, int col, const mpq_class& v);
    void finalize();

    // Reduction to another field; throws FieldError if p divides a denominator.
    SparseMatrix to_field(const Field& f) const;

    bool is_zero() const { return entries_.empty(); }

private:
    int rows_ = 0, cols_ = 0;
    Field field_ = Field::Q();
    std::vector<Triplet> entries_;
};

SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix hstack(const SparseMatrix& a, const SparseMatrix& b);
SparseMatrix transpose(const SparseMatrix& a);
SparseMatrix subtract(const SparseMatrix& a, const SparseMatrix& b);

// Exact rank over the matrix's field.
int rank(const SparseMatrix& m);
// Rank over f after reducing m (which must be over Q) to f.
int rank_over(const SparseMatrix& m, const Field& f);

std::string serialize_matrix(const SparseMatrix& m);
SparseMatrix parse_matrix(const std::string& text);

}  // namespace gcx

#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace posiplant {

using Var = std::uint32_t;

// A literal z: either the variable x_var (negated = false) or its
// complement (negated = true). Ordering is (var, negated), so x_i < ~x_i
// and literals of lower variables come first; this is the canonical term
// order used everywhere.
struct Literal {
    Var var = 0;
    bool negated = false;

    Literal complement() const { return {var, !negated}; }

    friend auto operator<=>(const Literal&, const Literal&) = default;
};

// Assignment x in {0,1}^n. bits[i] is 0 or 1.
struct Bitstring {
    std::vector<std::uint8_t> bits;

    Bitstring() = default;
    explicit Bitstring(std::size_t n) : bits(n, 0) {}

    std::size_t size() const { return bits.size(); }
    std::uint8_t operator[](std::size_t i) const { return bits[i]; }
    void set(std::size_t i, bool v) { bits[i] = v ? 1 : 0; }

    // "101" -> bits {1,0,1}; rejects characters outside {0,1}
    static Bitstring fromString(const std::string& s);
    std::string toString() const;

    // Packed hex: bit i lives in byte i/8 at position i%8, bytes printed
    // low-index-first as two lowercase digits each.
    std::string toHex() const;
    static Bitstring fromHex(const std::string& hex, std::size_t n);

    friend auto operator<=>(const Bitstring&, const Bitstring&) = default;
};

inline double evalLiteral(const Literal& z, const Bitstring& x) {
    const bool b = x[z.var] != 0;
    return (z.negated ? !b : b) ? 1.0 : 0.0;
}

// Posiform over literals: offset + sum b_z * z + sum b_{zz'} * z * z' with
// every coefficient strictly positive. Quadratic keys are canonically
// ordered literal pairs on distinct variables. Zero or negative
// coefficients are rejected at insertion, so "value - offset >= 0" holds
// for every assignment by construction.
class Posiform {
public:
    using QuadKey = std::pair<Literal, Literal>;

    Posiform() = default;
    explicit Posiform(Var num_vars) : num_vars_(num_vars) {}

    Var numVars() const { return num_vars_; }
    double offset() const { return offset_; }
    void addOffset(double v) { offset_ += v; }

    void addLinear(Literal z, double coeff);
    void addQuadratic(Literal a, Literal b, double coeff);

    const std::map<Literal, double>& linear() const { return linear_; }
    const std::map<QuadKey, double>& quadratic() const { return quadratic_; }

    friend bool operator==(const Posiform&, const Posiform&) = default;

private:
    void checkLiteral(const Literal& z) const;

    Var num_vars_ = 0;
    double offset_ = 0.0;
    std::map<Literal, double> linear_;
    std::map<QuadKey, double> quadratic_;
};

// QUBO: offset + sum a_i x_i + sum_{i<j} a_ij x_i x_j. Quadratic keys are
// stored with i < j; accumulating a term to exactly zero removes it, so no
// zero-valued entries are ever stored.
class Qubo {
public:
    using QuadKey = std::pair<Var, Var>;

    Qubo() = default;
    explicit Qubo(Var num_vars) : num_vars_(num_vars) {}

    Var numVars() const { return num_vars_; }
    double offset() const { return offset_; }
    void addOffset(double v) { offset_ += v; }

    void addLinear(Var i, double v);
    void addQuadratic(Var i, Var j, double v);

    double linearAt(Var i) const;
    double quadraticAt(Var i, Var j) const;

    const std::map<Var, double>& linear() const { return linear_; }
    const std::map<QuadKey, double>& quadratic() const { return quadratic_; }

    friend bool operator==(const Qubo&, const Qubo&) = default;

private:
    Var num_vars_ = 0;
    double offset_ = 0.0;
    std::map<Var, double> linear_;
    std::map<QuadKey, double> quadratic_;
};

// Energy including the offset. Throws std::invalid_argument on dimension
// mismatch.
double eval(const Qubo& q, const Bitstring& x);
double eval(const Posiform& p, const Bitstring& x);

// Rewrites a QUBO as a posiform with the same value at every assignment.
// Negative linear terms complement the variable; a negative quadratic
// a_ij x_i x_j (i < j) becomes offset a_ij plus (-a_ij) ~x_j plus
// (-a_ij) ~x_i x_j, i.e. the lower-index variable is the one complemented
// in the surviving quadratic term.
Posiform toPosiform(const Qubo& q);

// Expands complements; exact inverse of the identity eval(p,x) == eval(q,x).
Qubo toQubo(const Posiform& p);

struct BruteForceResult {
    double min_energy = 0.0;
    std::vector<Bitstring> minimizers; // lexicographic order
};

// Exhaustive ground-state search, Gray-code order with O(deg) flip deltas.
// Throws std::invalid_argument when numVars() > max_vars.
BruteForceResult bruteForce(const Qubo& q, int max_vars = 24);

} // namespace posiplant

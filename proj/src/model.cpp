#include "posiplant/model.hpp"

#include <algorithm>
#include <bit>
#include <cstdio>

namespace posiplant {

Bitstring Bitstring::fromString(const std::string& s) {
    Bitstring x(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] == '0') {
            x.bits[i] = 0;
        } else if (s[i] == '1') {
            x.bits[i] = 1;
        } else {
            throw std::invalid_argument("bitstring characters must be 0 or 1");
        }
    }
    return x;
}

std::string Bitstring::toString() const {
    std::string s(bits.size(), '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i]) s[i] = '1';
    }
    return s;
}

std::string Bitstring::toHex() const {
    static const char* digits = "0123456789abcdef";
    const std::size_t nbytes = (bits.size() + 7) / 8;
    std::string out(2 * nbytes, '0');
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (!bits[i]) continue;
        const std::size_t byte = i / 8;
        const int bit = static_cast<int>(i % 8);
        const int nibble = bit / 4;
        // low nibble printed second within the byte's two digits
        const std::size_t pos = 2 * byte + (nibble == 0 ? 1 : 0);
        int v = out[pos] <= '9' ? out[pos] - '0' : out[pos] - 'a' + 10;
        v |= 1 << (bit % 4);
        out[pos] = digits[v];
    }
    return out;
}

Bitstring Bitstring::fromHex(const std::string& hex, std::size_t n) {
    const std::size_t nbytes = (n + 7) / 8;
    if (hex.size() != 2 * nbytes) {
        throw std::invalid_argument("hex bitstring has wrong length");
    }
    auto nib = [](char c) -> int {
        if (c >= '0' && c <= '9') return c - '0';
        if (c >= 'a' && c <= 'f') return c - 'a' + 10;
        throw std::invalid_argument("invalid hex digit in bitstring");
    };
    Bitstring x(n);
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t byte = i / 8;
        const int bit = static_cast<int>(i % 8);
        const char c = hex[2 * byte + (bit < 4 ? 1 : 0)];
        x.bits[i] = (nib(c) >> (bit % 4)) & 1;
    }
    // reject stray bits beyond n
    for (std::size_t i = n; i < nbytes * 8; ++i) {
        const std::size_t byte = i / 8;
        const int bit = static_cast<int>(i % 8);
        const char c = hex[2 * byte + (bit < 4 ? 1 : 0)];
        if ((nib(c) >> (bit % 4)) & 1) {
            throw std::invalid_argument("hex bitstring has bits past its length");
        }
    }
    return x;
}

void Posiform::checkLiteral(const Literal& z) const {
    if (z.var >= num_vars_) {
        throw std::invalid_argument("posiform literal variable out of range");
    }
}

void Posiform::addLinear(Literal z, double coeff) {
    checkLiteral(z);
    if (!(coeff > 0.0)) {
        throw std::invalid_argument("posiform coefficients must be strictly positive");
    }
    linear_[z] += coeff;
}

void Posiform::addQuadratic(Literal a, Literal b, double coeff) {
    checkLiteral(a);
    checkLiteral(b);
    if (a.var == b.var) {
        throw std::invalid_argument("posiform quadratic term must pair distinct variables");
    }
    if (!(coeff > 0.0)) {
        throw std::invalid_argument("posiform coefficients must be strictly positive");
    }
    if (b < a) std::swap(a, b);
    quadratic_[{a, b}] += coeff;
}

void Qubo::addLinear(Var i, double v) {
    if (i >= num_vars_) throw std::invalid_argument("qubo variable out of range");
    if (v == 0.0) return;
    auto it = linear_.emplace(i, 0.0).first;
    it->second += v;
    if (it->second == 0.0) linear_.erase(it);
}

void Qubo::addQuadratic(Var i, Var j, double v) {
    if (i >= num_vars_ || j >= num_vars_) {
        throw std::invalid_argument("qubo variable out of range");
    }
    if (i == j) throw std::invalid_argument("qubo quadratic term needs distinct variables");
    if (j < i) std::swap(i, j);
    if (v == 0.0) return;
    auto it = quadratic_.emplace(QuadKey{i, j}, 0.0).first;
    it->second += v;
    if (it->second == 0.0) quadratic_.erase(it);
}

double Qubo::linearAt(Var i) const {
    auto it = linear_.find(i);
    return it == linear_.end() ? 0.0 : it->second;
}

double Qubo::quadraticAt(Var i, Var j) const {
    if (j < i) std::swap(i, j);
    auto it = quadratic_.find({i, j});
    return it == quadratic_.end() ? 0.0 : it->second;
}

double eval(const Qubo& q, const Bitstring& x) {
    if (x.size() != q.numVars()) {
        throw std::invalid_argument("assignment length does not match qubo");
    }
    double e = q.offset();
    for (const auto& [i, a] : q.linear()) {
        if (x[i]) e += a;
    }
    for (const auto& [key, a] : q.quadratic()) {
        if (x[key.first] && x[key.second]) e += a;
    }
    return e;
}

double eval(const Posiform& p, const Bitstring& x) {
    if (x.size() != p.numVars()) {
        throw std::invalid_argument("assignment length does not match posiform");
    }
    double e = p.offset();
    for (const auto& [z, b] : p.linear()) {
        e += b * evalLiteral(z, x);
    }
    for (const auto& [key, b] : p.quadratic()) {
        e += b * evalLiteral(key.first, x) * evalLiteral(key.second, x);
    }
    return e;
}

Posiform toPosiform(const Qubo& q) {
    Posiform p(q.numVars());
    p.addOffset(q.offset());
    for (const auto& [i, a] : q.linear()) {
        if (a > 0.0) {
            p.addLinear({i, false}, a);
        } else {
            // a x_i = a + (-a) ~x_i
            p.addOffset(a);
            p.addLinear({i, true}, -a);
        }
    }
    for (const auto& [key, a] : q.quadratic()) {
        const auto [i, j] = key; // i < j
        if (a > 0.0) {
            p.addQuadratic({i, false}, {j, false}, a);
        } else {
            // a x_i x_j = a + (-a) ~x_j + (-a) ~x_i x_j
            p.addOffset(a);
            p.addLinear({j, true}, -a);
            p.addQuadratic({i, true}, {j, false}, -a);
        }
    }
    return p;
}

Qubo toQubo(const Posiform& p) {
    Qubo q(p.numVars());
    q.addOffset(p.offset());
    for (const auto& [z, b] : p.linear()) {
        if (!z.negated) {
            q.addLinear(z.var, b);
        } else {
            q.addOffset(b);
            q.addLinear(z.var, -b);
        }
    }
    for (const auto& [key, b] : p.quadratic()) {
        const Var i = key.first.var;
        const Var j = key.second.var;
        const bool ni = key.first.negated;
        const bool nj = key.second.negated;
        if (!ni && !nj) {
            q.addQuadratic(i, j, b);
        } else if (ni && !nj) {
            q.addLinear(j, b);
            q.addQuadratic(i, j, -b);
        } else if (!ni && nj) {
            q.addLinear(i, b);
            q.addQuadratic(i, j, -b);
        } else {
            q.addOffset(b);
            q.addLinear(i, -b);
            q.addLinear(j, -b);
            q.addQuadratic(i, j, b);
        }
    }
    return q;
}

BruteForceResult bruteForce(const Qubo& q, int max_vars) {
    const int n = static_cast<int>(q.numVars());
    if (n > max_vars) {
        char msg[96];
        std::snprintf(msg, sizeof msg, "bruteForce: %d variables exceeds cap %d", n, max_vars);
        throw std::invalid_argument(msg);
    }

    std::vector<double> lin(n, 0.0);
    for (const auto& [i, a] : q.linear()) lin[i] = a;
    std::vector<std::vector<std::pair<int, double>>> adj(n);
    for (const auto& [key, a] : q.quadratic()) {
        adj[key.first].push_back({static_cast<int>(key.second), a});
        adj[key.second].push_back({static_cast<int>(key.first), a});
    }

    Bitstring x(n);
    double e = q.offset();
    BruteForceResult r;
    r.min_energy = e;
    r.minimizers.push_back(x);

    const std::uint64_t total = n == 0 ? 1 : (std::uint64_t{1} << n);
    for (std::uint64_t k = 1; k < total; ++k) {
        const int b = std::countr_zero(k); // Gray code: flip lowest set bit of k
        double field = lin[b];
        for (const auto& [j, w] : adj[b]) {
            if (x.bits[j]) field += w;
        }
        e += x.bits[b] ? -field : field;
        x.bits[b] ^= 1;
        if (e < r.min_energy) {
            r.min_energy = e;
            r.minimizers.clear();
            r.minimizers.push_back(x);
        } else if (e == r.min_energy) {
            r.minimizers.push_back(x);
        }
    }
    std::sort(r.minimizers.begin(), r.minimizers.end());
    return r;
}

} // namespace posiplant

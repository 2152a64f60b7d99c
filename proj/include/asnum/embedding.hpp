#ifndef ASNUM_EMBEDDING_HPP
#define ASNUM_EMBEDDING_HPP

// Explicit embeddings F_{p^a} -> F_{p^b} for a | b. The generator of the
// smaller field goes to the first root (enumeration order) of its modulus in
// the larger field.

#include <optional>
#include <vector>

#include "error.hpp"
#include "fields.hpp"
#include "upoly.hpp"

namespace asnum {

class Embedding {
  public:
    Embedding(const FieldDescriptor& from, const FieldDescriptor& to) : from_(&from), to_(&to) {
        require(from.p() == to.p(), "embedding between different characteristics");
        require(to.k() % from.k() == 0, from.name() + " does not embed in " + to.name());
        std::vector<Fq> mc;
        for (auto c : from.modulus()) mc.push_back(Fq(to, c));
        UPoly m(to, std::move(mc));
        Fq gamma;
        if (from.k() == 1) {
            gamma = Fq(to, static_cast<long long>(Fq::generator(from).coeff(0)));
        } else {
            auto rs = roots(m);
            ensure(!rs.empty(), "modulus has no root in the extension");
            gamma = rs.front();
        }
        powers_.push_back(Fq::one(to));
        for (unsigned i = 1; i < from.k(); ++i) powers_.push_back(powers_.back() * gamma);
    }

    const FieldDescriptor& from() const noexcept { return *from_; }
    const FieldDescriptor& to() const noexcept { return *to_; }
    Fq image_of_generator() const { return from_->k() > 1 ? powers_[1] : powers_[0].scaled(Fq::generator(*from_).coeff(0)); }

    Fq operator()(const Fq& a) const {
        require(a.field_ptr() == from_, "element is not in the embedding's source field");
        Fq r = Fq::zero(*to_);
        for (unsigned i = 0; i < from_->k(); ++i)
            if (a.coeff(i)) r += powers_[i].scaled(a.coeff(i));
        return r;
    }

    UPoly operator()(const UPoly& g) const {
        std::vector<Fq> c;
        for (const auto& a : g.coeffs()) c.push_back((*this)(a));
        return UPoly(*to_, std::move(c));
    }

  private:
    const FieldDescriptor* from_;
    const FieldDescriptor* to_;
    std::vector<Fq> powers_;
};

inline Embedding embed(const FieldDescriptor& from, const FieldDescriptor& to) { return Embedding(from, to); }

// Preimage of b under an embedding, if b lies in the image.
inline std::optional<Fq> restrict_to(const Embedding& e, const Fq& b) {
    // Gaussian elimination over F_p on coordinates.
    const FieldDescriptor& from = e.from();
    const FieldDescriptor& to = e.to();
    const unsigned ka = from.k(), kb = to.k(), p = from.p();
    // Columns: coordinates of e(g^i).
    std::vector<std::vector<unsigned>> a(kb, std::vector<unsigned>(ka + 1, 0));
    Fq gp = Fq::one(from);
    Fq gen = Fq::generator(from);
    for (unsigned i = 0; i < ka; ++i) {
        Fq im = e(gp);
        for (unsigned r = 0; r < kb; ++r) a[r][i] = im.coeff(r);
        gp *= gen;
    }
    for (unsigned r = 0; r < kb; ++r) a[r][ka] = b.coeff(r);
    std::vector<int> pivcol;
    unsigned row = 0;
    for (unsigned c = 0; c < ka && row < kb; ++c) {
        unsigned piv = row;
        while (piv < kb && a[piv][c] == 0) ++piv;
        if (piv == kb) continue;
        std::swap(a[piv], a[row]);
        unsigned inv = from.inv_mod_p(a[row][c]);
        for (auto& v : a[row]) v = v * inv % p;
        for (unsigned r = 0; r < kb; ++r) {
            if (r == row || a[r][c] == 0) continue;
            unsigned m = a[r][c];
            for (unsigned j = 0; j <= ka; ++j) a[r][j] = (a[r][j] + (p - m) * a[row][j]) % p;
        }
        pivcol.push_back(static_cast<int>(c));
        ++row;
    }
    for (unsigned r = row; r < kb; ++r)
        if (a[r][ka]) return std::nullopt;
    std::vector<std::uint32_t> x(ka, 0);
    for (unsigned r = 0; r < row; ++r) x[pivcol[r]] = a[r][ka];
    Fq out = Fq::zero(from);
    Fq g2 = Fq::one(from);
    for (unsigned i = 0; i < ka; ++i) {
        out += g2.scaled(x[i]);
        g2 *= gen;
    }
    return out;
}

}  // namespace asnum

#endif

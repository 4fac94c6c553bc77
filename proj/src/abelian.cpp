#include "stickel/abelian.hpp"

#include <stdexcept>

namespace stk {

AbGroup::AbGroup(int ngens, IntMat rels) : n_(ngens) {
    if (rels.cols != ngens) throw std::invalid_argument("AbGroup: relation width mismatch");
    rels_ = hnf_basis(rels);
    if (rels_.rows != n_) throw std::invalid_argument("AbGroup: group is infinite");
    SnfResult s = snf_full(rels_);
    diag_ = s.diag;
    v_ = s.v;
    // v is unimodular; invert exactly
    RatMat rv(n_, n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) rv.at(i, j) = Rat(v_.at(i, j));
    RatMat inv = rat_inverse(rv);
    vinv_ = IntMat(n_, n_);
    for (int i = 0; i < n_; i++)
        for (int j = 0; j < n_; j++) {
            if (inv.at(i, j).get_den() != 1)
                throw std::logic_error("AbGroup: transform not unimodular");
            vinv_.at(i, j) = inv.at(i, j).get_num();
        }
    order_ = 1;
    for (auto& d : diag_) order_ *= d;
}

std::vector<Int> AbGroup::label(const std::vector<Int>& v) const {
    if ((int)v.size() != n_) throw std::invalid_argument("AbGroup::label: dimension");
    std::vector<Int> y(n_, Int(0));
    for (int j = 0; j < n_; j++) {
        Int s = 0;
        for (int i = 0; i < n_; i++) s += v[i] * v_.at(i, j);
        mpz_fdiv_r(y[j].get_mpz_t(), s.get_mpz_t(), diag_[(size_t)j].get_mpz_t());
    }
    return y;
}

std::vector<Int> AbGroup::rep(const std::vector<Int>& lab) const {
    std::vector<Int> x(n_, Int(0));
    for (int j = 0; j < n_; j++) {
        Int s = 0;
        for (int i = 0; i < n_; i++) s += lab[i] * vinv_.at(i, j);
        x[j] = s;
    }
    return x;
}

std::vector<Int> AbGroup::add(const std::vector<Int>& a, const std::vector<Int>& b) const {
    std::vector<Int> s(n_);
    for (int i = 0; i < n_; i++) s[i] = a[i] + b[i];
    return label(s);
}

std::vector<Int> AbGroup::neg(const std::vector<Int>& a) const {
    std::vector<Int> s(n_);
    for (int i = 0; i < n_; i++) s[i] = -a[i];
    return label(s);
}

std::vector<Int> AbGroup::zero_label() const { return std::vector<Int>(n_, Int(0)); }

bool AbGroup::is_zero(const std::vector<Int>& v) const {
    for (auto& c : label(v))
        if (c != 0) return false;
    return true;
}

Int AbGroup::element_order(const std::vector<Int>& v) const {
    std::vector<Int> y = label(v);
    Int ord = 1;
    for (int i = 0; i < n_; i++) {
        Int g;
        mpz_gcd(g.get_mpz_t(), y[(size_t)i].get_mpz_t(), diag_[(size_t)i].get_mpz_t());
        Int o = diag_[(size_t)i] / g;
        mpz_lcm(ord.get_mpz_t(), ord.get_mpz_t(), o.get_mpz_t());
    }
    return ord;
}

std::vector<std::vector<Int>> AbGroup::elements() const {
    std::vector<std::vector<Int>> out;
    std::vector<Int> cur(n_, Int(0));
    for (;;) {
        out.push_back(cur);
        int i = n_ - 1;
        while (i >= 0) {
            cur[i] += 1;
            if (cur[i] < diag_[(size_t)i]) break;
            cur[i] = 0;
            i--;
        }
        if (i < 0) break;
    }
    return out;
}

AbHom::AbHom(const AbGroup* dom, const AbGroup* cod, IntMat gen_images)
    : dom_(dom), cod_(cod), images_(std::move(gen_images)) {
    if (images_.rows != dom->ngens() || images_.cols != cod->ngens())
        throw std::invalid_argument("AbHom: image matrix shape");
    // each relation of the domain must map into the codomain's relations
    const IntMat& r = dom->relations();
    for (int i = 0; i < r.rows; i++) {
        std::vector<Int> img(cod->ngens(), Int(0));
        for (int j = 0; j < cod->ngens(); j++)
            for (int k = 0; k < r.cols; k++) img[(size_t)j] += r.at(i, k) * images_.at(k, j);
        if (!cod->is_zero(img)) throw std::invalid_argument("AbHom: not well-defined");
    }
}

std::vector<Int> AbHom::apply(const std::vector<Int>& v) const {
    std::vector<Int> img(cod_->ngens(), Int(0));
    for (int j = 0; j < cod_->ngens(); j++)
        for (int k = 0; k < dom_->ngens(); k++) img[(size_t)j] += v[(size_t)k] * images_.at(k, j);
    return cod_->label(img);
}

IntMat AbHom::kernel_lattice() const {
    IntMat k = preimage_lattice(images_, cod_->relations());
    return hnf_basis(vstack(k, dom_->relations()));
}

IntMat AbHom::image_lattice() const {
    return hnf_basis(vstack(images_, cod_->relations()));
}

IntMat subgroup_lattice(const AbGroup& g, const std::vector<std::vector<Int>>& gens) {
    IntMat m((int)gens.size(), g.ngens());
    for (size_t i = 0; i < gens.size(); i++)
        for (int j = 0; j < g.ngens(); j++) m.at((int)i, j) = gens[i][(size_t)j];
    return hnf_basis(vstack(m, g.relations()));
}

}  // namespace stk

#ifndef QELLR_CHARTABLE_HPP
#define QELLR_CHARTABLE_HPP

#include <memory>
#include <vector>

#include "qellr/cochain.hpp"
#include "qellr/cyclotomic.hpp"
#include "qellr/group.hpp"

namespace qellr {

using ClassFunction = std::vector<Cyc>;  // indexed by class

// Complex character table of a finite group (grading ignored).
struct CharacterTable {
    GroupPtr group;
    ClassData classes;
    int exponent = 1;
    int64_t prime = 0;  // prime used for the modular computation
    std::vector<ClassFunction> chars;
    int count() const { return static_cast<int>(chars.size()); }
    Cyc value(int irrep, int elem) const { return chars[irrep][classes.class_of[elem]]; }
    int64_t degree(int irrep) const;
};
using TablePtr = std::shared_ptr<const CharacterTable>;

// Dixon-Schneider over F_p, lifted to exact cyclotomic values. Cached by group table.
TablePtr character_table(const GroupPtr& g);

Rational inner_product(const CharacterTable& t, const ClassFunction& a, const ClassFunction& b);
// Multiplicities of the irreducibles; throws if not a virtual character.
std::vector<int64_t> decompose(const CharacterTable& t, const ClassFunction& f);
ClassFunction class_function(const CharacterTable& t, const std::function<Cyc(int)>& value_at_elem);
ClassFunction induce(const CharacterTable& sub, const Subgroup& s, const CharacterTable& parent, const ClassFunction& f);
ClassFunction restrict_char(const CharacterTable& parent, const Subgroup& s, const CharacterTable& sub, const ClassFunction& f);

enum class RealType { R, C, H, Complex };
const char* real_type_name(RealType t);

// Twisted irreducibles of the extension: characters of its ungraded part on which
// (e, z) acts by zeta_m^z. For a graded base each carries a Real type.
struct TwistedIrreps {
    GroupPtr group;     // the extension group (graded or not)
    int central = 0;    // generator of the central Z/m
    int64_t m = 1;
    Subgroup ungraded;  // ker pi inside group
    TablePtr table;     // of ungraded.group
    std::vector<int> rows;
    std::vector<int> indicator;
    std::vector<RealType> type;
    std::vector<int> partner;  // index into rows
    struct RealIrrep {
        RealType type;
        int a;  // index into rows
        int b;  // partner for C, else a
    };
    std::vector<RealIrrep> real;

    int count() const { return static_cast<int>(rows.size()); }
    // value of the k-th twisted irrep at an even element of group
    Cyc value(int k, int ext_elem) const;
    int64_t degree(int k) const;
    // character of the underlying complex representation of a Real irreducible
    Cyc forgot_value(int r, int ext_elem) const;
};

TwistedIrreps twisted_irreps(const std::shared_ptr<const Extension>& ext);
TwistedIrreps twisted_irreps(const GroupPtr& group, int central, int64_t m);

// Graded Frobenius-Schur indicator of a character chi of ker pi of grp (given on ker pi
// elements via a callback).
int graded_indicator(const GradedGroup& grp, const std::function<Cyc(int)>& chi, int64_t kernel_order);

}  // namespace qellr

#endif

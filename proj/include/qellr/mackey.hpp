#ifndef QELLR_MACKEY_HPP
#define QELLR_MACKEY_HPP

#include <memory>
#include <optional>
#include <vector>

#include "qellr/chartable.hpp"
#include "qellr/cochain.hpp"

namespace qellr {

// One orbit of Irr^theta(H) under the Real action of G^.
struct MackeyOrbit {
    std::vector<int> members;      // indices into MackeyData::irreps_h
    std::vector<int> stabilizer;   // G^(rho), elements of G^
    Quotient quotient;             // Q^(rho) = G^(rho) / H
    // Extension cocycle nu^_rho on Q^(rho) with values in Z/M; present when rho is linear.
    std::optional<Cochain> nu;
    int64_t nu_modulus = 1;
    int64_t count_nu = 0;          // Real irreps of the nu-twisted Q^(rho) (when nu is present)
    int64_t count_over = 0;        // Real theta-irreps of G^ lying over the orbit (direct)
};

struct MackeyData {
    GroupPtr group;
    std::vector<int> normal;       // H as elements of G^
    std::shared_ptr<const Extension> ext;   // theta^-extension of G^
    Subgroup h_tilde;              // preimage of H in ext
    TwistedIrreps irreps_h;        // Irr^theta(H)
    std::vector<MackeyOrbit> orbits;
    int64_t count_total = 0;       // Real theta^-irreps of G^
    // sum of count_nu over orbits equals count_total (only when every nu is present)
    bool identity_holds() const;
};

// theta: twisted 2-cocycle on G^ (nullptr for untwisted). H must be normal and even.
MackeyData mackey_decompose(const GroupPtr& grp, const std::vector<int>& normal, const Cochain* theta = nullptr);

// Real irreps of a (possibly graded) twisted extension: R, C pairs and H each count once.
int64_t real_irrep_count(const TwistedIrreps& t);

}  // namespace qellr

#endif

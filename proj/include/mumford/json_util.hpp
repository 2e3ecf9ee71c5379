#pragma once

#include <json.hpp>

#include "mumford/rational.hpp"

namespace mumford {

/// A JSON number when the value fits in 64 bits, a decimal string otherwise.
inline nlohmann::json big_json(const BigInt& x) {
    if (mpz_fits_slong_p(x.get_mpz_t())) return nlohmann::json(x.get_si());
    return nlohmann::json(x.get_str());
}

}  // namespace mumford

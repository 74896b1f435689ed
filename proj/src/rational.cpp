#include "fermat/rational.hpp"

namespace fermat {

mpz_class Rat::floor() const {
  mpz_class out;
  mpz_fdiv_q(out.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
  return out;
}

}  // namespace fermat

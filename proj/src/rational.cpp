#include "iw/rational.hpp"

namespace iw {

Rat parse_rat(const std::string& text) {
  auto bad = [&] { throw std::invalid_argument("bad rational '" + text + "'"); };
  if (text.empty()) bad();
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      mpz_class n(text);
      return Rat(n);
    }
    mpz_class num(text.substr(0, slash));
    mpz_class den(text.substr(slash + 1));
    if (den == 0) bad();
    Rat q(num, den);
    q.canonicalize();
    return q;
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
  return Rat(0);  // unreachable
}

}  // namespace iw

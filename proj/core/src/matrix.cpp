#include "sqv/matrix.hpp"

#include <sstream>

namespace sqv {

FMat reduce_matrix(const FiniteField& f, const QMat& m) {
  FMat out(m.rows(), m.cols(), 0);
  const long p = static_cast<long>(f.characteristic());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const mpq_class& x = m(i, j);
      mpz_class num = x.get_num() % p;
      mpz_class den = x.get_den() % p;
      long n = num.get_si(), d = den.get_si();
      FiniteField::value_type en = f.from_int(n), ed = f.from_int(d);
      if (ed == 0) throw std::domain_error("denominator vanishes modulo the characteristic");
      out(i, j) = f.div(en, ed);
    }
  return out;
}

std::string to_string(const QMat& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    os << (i ? ",[" : "[");
    for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j).get_str();
    os << "]";
  }
  os << "]";
  return os.str();
}

}  // namespace sqv

#include "qspectral/quat.hpp"

#include <ostream>

namespace qspectral {

std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << q.a << (q.b < 0 ? " - " : " + ") << std::abs(q.b) << "i" << (q.c < 0 ? " - " : " + ")
            << std::abs(q.c) << "j" << (q.d < 0 ? " - " : " + ") << std::abs(q.d) << "k";
}

std::ostream& operator<<(std::ostream& os, const EigenSphere& s) {
  return os << "[u=" << s.u << ", v=" << s.v << "]";
}

}  // namespace qspectral

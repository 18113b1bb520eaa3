#include "ballistic/errors.hpp"

namespace ballistic {

void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace ballistic

#include "zslab/element.hpp"

#include <sstream>

#include "zslab/errors.hpp"

namespace zslab {

Elem Elem::pair(Elem first, Elem second) {
  return Elem(Payload(
      std::make_shared<const std::pair<Elem, Elem>>(std::move(first),
                                                    std::move(second))));
}

const Elem::IntVec& Elem::as_vec() const {
  if (!is_vec()) throw DomainError("element is not an integer tuple");
  return std::get<IntVec>(v_);
}

const std::string& Elem::as_word() const {
  if (!is_word()) throw DomainError("element is not a word");
  return std::get<std::string>(v_);
}

int Elem::as_index() const {
  if (!is_index()) throw DomainError("element is not a table index");
  return std::get<int>(v_);
}

const Elem& Elem::first() const {
  if (!is_pair()) throw DomainError("element is not a pair");
  return std::get<PairPtr>(v_)->first;
}

const Elem& Elem::second() const {
  if (!is_pair()) throw DomainError("element is not a pair");
  return std::get<PairPtr>(v_)->second;
}

bool Elem::operator==(const Elem& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (is_pair()) {
    return first() == o.first() && second() == o.second();
  }
  return v_ == o.v_;
}

bool Elem::operator<(const Elem& o) const {
  if (v_.index() != o.v_.index()) return v_.index() < o.v_.index();
  if (is_pair()) {
    if (first() < o.first()) return true;
    if (o.first() < first()) return false;
    return second() < o.second();
  }
  return v_ < o.v_;
}

std::string Elem::to_string() const {
  std::ostringstream os;
  if (is_vec()) {
    const auto& v = as_vec();
    os << "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) os << ",";
      os << v[i];
    }
    os << ")";
  } else if (is_word()) {
    os << "\"" << as_word() << "\"";
  } else if (is_index()) {
    os << "#" << as_index();
  } else {
    os << "(" << first().to_string() << "|" << second().to_string() << ")";
  }
  return os.str();
}

}  // namespace zslab

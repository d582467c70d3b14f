// Copyright 2026 The picot Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <utility>
#include <variant>

namespace picot {

// Wrapper marking a value as the error alternative of an Expected.
template <typename E>
struct Unexpected {
  E error;
};

template <typename E>
Unexpected<std::decay_t<E>> unexpected(E&& e) {
  return {std::forward<E>(e)};
}

class BadExpectedAccess : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Minimal value-or-error holder (std::expected is C++23).
template <typename T, typename E>
class Expected {
 public:
  Expected(const T& v) : storage_(std::in_place_index<0>, v) {}
  Expected(T&& v) : storage_(std::in_place_index<0>, std::move(v)) {}
  Expected(Unexpected<E> u) : storage_(std::in_place_index<1>, std::move(u.error)) {}

  bool has_value() const noexcept { return storage_.index() == 0; }
  explicit operator bool() const noexcept { return has_value(); }

  T& value() & {
    check();
    return std::get<0>(storage_);
  }
  const T& value() const& {
    check();
    return std::get<0>(storage_);
  }
  T&& value() && {
    check();
    return std::get<0>(std::move(storage_));
  }

  const E& error() const& {
    if (has_value()) throw BadExpectedAccess("Expected holds a value");
    return std::get<1>(storage_);
  }

  T& operator*() & { return value(); }
  const T& operator*() const& { return value(); }
  T* operator->() { return &value(); }
  const T* operator->() const { return &value(); }

 private:
  void check() const {
    if (!has_value()) throw BadExpectedAccess("Expected holds an error");
  }

  std::variant<T, E> storage_;
};

}  // namespace picot

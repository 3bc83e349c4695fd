#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace slat {

// Bad user input: unknown identifiers, malformed markings, empty transition sets.
struct input_error : std::runtime_error {
  explicit input_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Attempt to fire a disabled transition; carries the violated place and,
// for sequences, the failing step index.
struct firing_error : std::runtime_error {
  int place = -1;
  int step = -1;
  firing_error(const std::string& msg, int place_idx, int step_idx = -1)
      : std::runtime_error(msg), place(place_idx), step(step_idx) {}
};

struct parse_error : std::runtime_error {
  int line = 0;
  parse_error(const std::string& msg, int line_no)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

// A configurable resource guard tripped (formula size, enumeration product).
struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Certificate replay failed; identifies the offending component.
struct certificate_error : std::runtime_error {
  int component = -1;
  certificate_error(const std::string& msg, int component_idx)
      : std::runtime_error(msg), component(component_idx) {}
};

// Checked 64-bit arithmetic for token counts and weights.
inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("token arithmetic overflow");
  return r;
}
inline std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("token arithmetic overflow");
  return r;
}
inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("token arithmetic overflow");
  return r;
}

}  // namespace slat

#pragma once

#include <cstddef>
#include <exception>
#include <functional>
#include <optional>
#include <type_traits>
#include <utility>

namespace pretty {

inline constexpr std::size_t kDeepStackBytes = std::size_t{1} << 30;

/// Runs `fn` to completion on a fresh thread with a `stack_bytes` stack and
/// rethrows whatever it threw. Resolving, flattening and building frontend
/// documents recurse once per nesting level, which overflows a default stack
/// on benchmark-sized inputs.
void run_on_deep_stack(const std::function<void()>& fn, std::size_t stack_bytes = kDeepStackBytes);

template <class Fn>
auto with_deep_stack(Fn&& fn) -> std::invoke_result_t<Fn&> {
  using R = std::invoke_result_t<Fn&>;
  if constexpr (std::is_void_v<R>) {
    run_on_deep_stack([&] { fn(); });
  } else {
    std::optional<R> result;
    run_on_deep_stack([&] { result.emplace(fn()); });
    return std::move(*result);
  }
}

}  // namespace pretty

// Variant registry and one-time CPU feature dispatch.

#include "tnw/simd/ops.hpp"

#include <atomic>

namespace tnw::simd {

const Ops* avx2_ops(); // nullptr when not compiled in or unsupported
const Ops* neon_ops();

namespace {

bool cpu_has_avx2_fma() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

std::vector<const Ops*> build_registry() {
    std::vector<const Ops*> ops;
    ops.push_back(&scalar_ops());
    if (const Ops* avx2 = avx2_ops(); avx2 && cpu_has_avx2_fma())
        ops.push_back(avx2);
    if (const Ops* neon = neon_ops())
        ops.push_back(neon);
    return ops;
}

std::atomic<const Ops*> g_active{nullptr};

const Ops* pick_widest() {
    const auto& reg = available_ops();
    return reg.back(); // registry is ordered scalar-first, widest last
}

} // namespace

const std::vector<const Ops*>& available_ops() {
    static const std::vector<const Ops*> registry = build_registry();
    return registry;
}

const Ops& active_ops() {
    const Ops* cur = g_active.load(std::memory_order_acquire);
    if (!cur) {
        cur = pick_widest();
        g_active.store(cur, std::memory_order_release);
    }
    return *cur;
}

bool select_ops(std::string_view name) {
    for (const Ops* ops : available_ops()) {
        if (name == ops->name) {
            g_active.store(ops, std::memory_order_release);
            return true;
        }
    }
    return false;
}

} // namespace tnw::simd

#include "weyl/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <mutex>

#include "weyl/errors.hpp"

namespace weyl::kernels {

namespace {

const Kernel* widest_available() {
    if (const Kernel* k = avx2_kernel()) return k;
    if (const Kernel* k = neon_kernel()) return k;
    return &scalar_kernel();
}

const Kernel* lookup(std::string_view name) {
    if (name == "auto") return widest_available();
    if (name == "scalar") return &scalar_kernel();
    if (name == "avx2") return avx2_kernel();
    if (name == "neon") return neon_kernel();
    return nullptr;
}

std::atomic<const Kernel*>& active_slot() {
    static std::atomic<const Kernel*> slot{nullptr};
    return slot;
}

void init_from_env() {
    const char* env = std::getenv("WEYL_KERNEL");
    const Kernel* k = env ? lookup(env) : widest_available();
    if (k == nullptr) k = widest_available();  // unknown or unavailable name
    active_slot().store(k, std::memory_order_release);
}

}  // namespace

const Kernel& active_kernel() {
    static std::once_flag once;
    std::call_once(once, init_from_env);
    return *active_slot().load(std::memory_order_acquire);
}

void set_active_kernel(std::string_view name) {
    active_kernel();  // ensure initialized
    const Kernel* k = lookup(name);
    if (k == nullptr)
        throw UsageError("kernel '" + std::string(name) + "' is not available on this host");
    active_slot().store(k, std::memory_order_release);
}

std::vector<std::string> available_kernels() {
    std::vector<std::string> names{"scalar"};
    if (avx2_kernel()) names.emplace_back("avx2");
    if (neon_kernel()) names.emplace_back("neon");
    return names;
}

}  // namespace weyl::kernels

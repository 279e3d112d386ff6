#pragma once

namespace somguard {

enum class Label { Normal, Anomalous };

}  // namespace somguard

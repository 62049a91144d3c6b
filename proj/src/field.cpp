#include "freqaug/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "freqaug/error.hpp"

namespace freqaug {

Field::Field(int height, int width, int channels, double fill)
    : height_(height), width_(width), channels_(channels) {
    if (height < 0 || width < 0 || channels < 0) {
        throw InvalidInput("field dimensions must be nonnegative");
    }
    data_.assign(static_cast<std::size_t>(height) * width * channels, fill);
}

Image::Image(Field field) : field_(std::move(field)) {
    if (field_.height() < 2 || field_.width() < 2) {
        std::ostringstream msg;
        msg << "image must be at least 2x2, got " << field_.height() << "x" << field_.width();
        throw InvalidInput(msg.str());
    }
    if (field_.channels() < 1) {
        throw InvalidInput("image needs at least one channel");
    }
    for (double v : field_.values()) {
        if (!(v >= 0.0 && v <= 1.0)) {
            std::ostringstream msg;
            msg << "image value " << v << " outside [0,1]";
            throw InvalidInput(msg.str());
        }
    }
}

Image clamp_to_image(Field field) {
    for (double& v : field.values()) {
        v = std::isnan(v) ? 0.0 : std::clamp(v, 0.0, 1.0);
    }
    return Image(std::move(field));
}

}  // namespace freqaug

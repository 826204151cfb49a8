#include "liftspec/permutation.hpp"

#include <cctype>
#include <numeric>

#include "liftspec/errors.hpp"

namespace liftspec {

Permutation::Permutation(std::size_t degree) : images_(degree) {
    if (degree == 0) throw ParseError("permutation degree must be at least 1");
    std::iota(images_.begin(), images_.end(), 0);
}

Permutation Permutation::from_images(std::vector<int> images) {
    if (images.empty()) throw ParseError("permutation degree must be at least 1");
    std::vector<bool> seen(images.size(), false);
    for (int p : images) {
        if (p < 0 || static_cast<std::size_t>(p) >= images.size() || seen[static_cast<std::size_t>(p)])
            throw ParseError("image list is not a bijection");
        seen[static_cast<std::size_t>(p)] = true;
    }
    Permutation out(images.size());
    out.images_ = std::move(images);
    return out;
}

Permutation Permutation::from_one_based(const std::vector<int>& images) {
    std::vector<int> zero(images.size());
    for (std::size_t i = 0; i < images.size(); ++i) zero[i] = images[i] - 1;
    return from_images(std::move(zero));
}

std::vector<int> Permutation::one_based_images() const {
    std::vector<int> out(images_);
    for (int& p : out) ++p;
    return out;
}

bool Permutation::is_identity() const {
    for (std::size_t i = 0; i < images_.size(); ++i)
        if (images_[i] != static_cast<int>(i)) return false;
    return true;
}

Permutation Permutation::operator*(const Permutation& rhs) const {
    if (rhs.degree() != degree()) throw ConsistencyError("degree mismatch in permutation product");
    Permutation out(degree());
    for (std::size_t p = 0; p < images_.size(); ++p) out.images_[p] = rhs(images_[p]);
    return out;
}

Permutation Permutation::inverse() const {
    Permutation out(degree());
    for (std::size_t p = 0; p < images_.size(); ++p)
        out.images_[static_cast<std::size_t>(images_[p])] = static_cast<int>(p);
    return out;
}

std::string Permutation::to_cycle_string() const {
    std::string out;
    std::vector<bool> done(images_.size(), false);
    for (std::size_t start = 0; start < images_.size(); ++start) {
        if (done[start] || images_[start] == static_cast<int>(start)) continue;
        out += '(';
        std::size_t p = start;
        bool first = true;
        while (!done[p]) {
            done[p] = true;
            if (!first) out += ' ';
            out += std::to_string(p + 1);
            first = false;
            p = static_cast<std::size_t>(images_[p]);
        }
        out += ')';
    }
    return out.empty() ? "()" : out;
}

namespace {

class CycleParser {
public:
    CycleParser(std::string_view text, std::size_t degree) : text_(text), degree_(degree) {}

    Permutation parse() {
        if (degree_ == 0) fail("degree must be at least 1");
        std::vector<int> images(degree_);
        std::iota(images.begin(), images.end(), 0);
        std::vector<bool> used(degree_, false);

        skip_space();
        if (at_end()) fail("empty text");
        if (text_.substr(pos_, 2) == "()") {
            pos_ += 2;
            skip_space();
            if (!at_end()) fail("identity \"()\" must stand alone");
            return Permutation::from_images(std::move(images));
        }
        while (!at_end()) {
            expect('(');
            std::vector<int> cycle;
            for (;;) {
                skip_space();
                if (peek() == ')') break;
                if (!cycle.empty() && !previous_was_space_) fail("points must be separated by spaces");
                const int point = read_point();
                if (used[static_cast<std::size_t>(point)]) fail("point " + std::to_string(point + 1) + " repeated");
                used[static_cast<std::size_t>(point)] = true;
                cycle.push_back(point);
            }
            expect(')');
            if (cycle.size() < 2) fail("a cycle needs at least two points");
            for (std::size_t i = 0; i < cycle.size(); ++i)
                images[static_cast<std::size_t>(cycle[i])] = cycle[(i + 1) % cycle.size()];
            skip_space();
        }
        return Permutation::from_images(std::move(images));
    }

private:
    bool at_end() const { return pos_ >= text_.size(); }
    char peek() const {
        if (at_end()) fail("unexpected end of text");
        return text_[pos_];
    }

    void skip_space() {
        previous_was_space_ = false;
        while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) {
            ++pos_;
            previous_was_space_ = true;
        }
    }

    void expect(char c) {
        if (peek() != c) fail(std::string("expected '") + c + "'");
        ++pos_;
    }

    int read_point() {
        const std::size_t begin = pos_;
        unsigned long long value = 0;
        while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
            value = value * 10 + static_cast<unsigned>(text_[pos_] - '0');
            if (value > degree_) value = degree_ + 1;  // saturate; reported below
            ++pos_;
        }
        if (pos_ == begin) fail("expected a point");
        if (value < 1 || value > degree_)
            fail("point out of range 1.." + std::to_string(degree_));
        return static_cast<int>(value - 1);
    }

    [[noreturn]] void fail(const std::string& what) const {
        throw ParseError("cannot parse permutation \"" + std::string(text_) + "\": " + what);
    }

    std::string_view text_;
    std::size_t degree_;
    std::size_t pos_ = 0;
    bool previous_was_space_ = false;
};

}  // namespace

Permutation parse_permutation(std::string_view text, std::size_t degree) {
    return CycleParser(text, degree).parse();
}

}  // namespace liftspec

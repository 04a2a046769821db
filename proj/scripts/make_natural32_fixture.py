#!/usr/bin/env python3
"""Build a CIFAR-10 binary batch of 32x32 natural-image crops.

The crops come from the public-domain sample photographs shipped with
scikit-image, scikit-learn and matplotlib, so the file can be regenerated
offline. Labels are uniform in 0..9 and carry no semantic meaning.
"""
import argparse

import numpy as np
import skimage.data
from matplotlib import cbook
from sklearn.datasets import load_sample_images


def sources():
    imgs = [
        skimage.data.astronaut(),
        skimage.data.chelsea(),
        skimage.data.coffee(),
        skimage.data.rocket(),
        skimage.data.immunohistochemistry(),
        skimage.data.retina(),
        skimage.data.hubble_deep_field(),
        skimage.data.stereo_motorcycle()[0],
        skimage.data.stereo_motorcycle()[1],
    ]
    imgs += list(load_sample_images().images)
    with cbook.get_sample_data("grace_hopper.jpg") as f:
        import matplotlib.image as mpimg
        imgs.append(mpimg.imread(f, format="jpg"))
    return [np.asarray(i[..., :3], dtype=np.float64) for i in imgs]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--count", type=int, default=2000)
    ap.add_argument("--seed", type=int, default=20210411)
    ap.add_argument("--output", required=True)
    args = ap.parse_args()

    rng = np.random.default_rng(args.seed)
    srcs = sources()
    out = bytearray()
    for _ in range(args.count):
        img = srcs[rng.integers(len(srcs))]
        h, w, _ = img.shape
        factors = [f for f in (2, 3, 4, 5, 6, 8, 10) if 32 * f <= min(h, w)]
        f = int(rng.choice(factors))
        side = 32 * f
        r = int(rng.integers(h - side + 1))
        c = int(rng.integers(w - side + 1))
        crop = img[r:r + side, c:c + side]
        small = crop.reshape(32, f, 32, f, 3).mean(axis=(1, 3))
        px = np.clip(np.rint(small), 0, 255).astype(np.uint8)
        label = int(rng.integers(10))
        out.append(label)
        out += px.transpose(2, 0, 1).tobytes()
    with open(args.output, "wb") as fh:
        fh.write(out)


if __name__ == "__main__":
    main()

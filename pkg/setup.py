import sys

from setuptools import setup

# The compiled kernel is an optimization; the package is fully functional on the
# pure-Python fallback, so a failed compile must not fail the install.
ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "witnessgraphs.kernel._fast",
                ["src/witnessgraphs/kernel/_fast.pyx"],
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
        },
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"warning: building without compiled kernel ({exc})\n")

setup(ext_modules=ext_modules)

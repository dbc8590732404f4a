"""Build hook for the optional compiled kernel extension.

The package is pure Python except for diracstep._kernels_cy, a Cython
translation of the hot integration loops.  The extension is marked
optional: if Cython or a C compiler is unavailable the install still
succeeds and the package falls back to the pure-Python kernels at import
time (see diracstep.kernels).
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "diracstep._kernels_cy",
                ["src/diracstep/_kernels_cy.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

# name/package_dir duplicated from pyproject.toml for older setuptools,
# whose legacy editable path cannot resolve the src layout on its own.
setup(
    name="diracstep",
    version="0.1.0",
    package_dir={"": "src"},
    packages=["diracstep"],
    entry_points={"console_scripts": ["diracstep = diracstep.cli:main"]},
    ext_modules=ext_modules,
)

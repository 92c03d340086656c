from setuptools import Extension, setup
from Cython.Build import cythonize

# The compiled core uses typed memoryviews only, so no numpy headers needed.
setup(
    ext_modules=cythonize(
        [
            Extension(
                "ringbloch._core",
                ["src/ringbloch/_core.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
)

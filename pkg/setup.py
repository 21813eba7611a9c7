from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; sweep falls back to _sweep_py
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("modalsat._sweep", ["src/modalsat/_sweep.pyx"], extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("superdixmier._straighten_c", ["src/superdixmier/_straighten_c.pyx"], optional=True)],
        language_level=3,
    )

setup(ext_modules=ext_modules)

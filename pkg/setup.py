from setuptools import setup, find_packages


with open('README.md') as file:
    long_description = file.read()

setup(
    name = 'planesing',
    version = '0.1.0',
    description = 'Singularities of plane curves and equisingular families',
    long_description = long_description,
    long_description_content_type = 'text/markdown',
    package_data = {'planesing': ['py.typed']},
    packages = find_packages('src'),
    package_dir = {'': 'src'},
    zip_safe = False,
    python_requires = '>= 3.7, < 4',
    install_requires = [
        'PyYAML',
        'sympy',
        'typing-extensions',
    ],
    entry_points = {
        'console_scripts': ['planesing=planesing.cli:main'],
    },
)

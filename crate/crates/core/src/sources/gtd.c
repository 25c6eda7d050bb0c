int gtd(int *d, int *path, int n)
{
    int i, distance = 0;
    for (i = 0; i < n; i++)
        distance += d[path[i] * n + path[i + 1]];
    return distance;
}
